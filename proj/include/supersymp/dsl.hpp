#pragma once

#include "supersymp/cech.hpp"
#include "supersymp/heisenberg.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ssp {

struct SourcePos {
  int line = 1;
  int col = 1;
};

struct ParseError : std::runtime_error {
  SourcePos pos;
  ParseError(SourcePos p, const std::string& msg)
      : std::runtime_error("line " + std::to_string(p.line) + ", column " + std::to_string(p.col) + ": " + msg),
        pos(p) {}
};

/// Cover data: simplices of the nerve, explicit cocycle values a, potentials f
/// (contributing their coboundary) and the period unit d.
struct CoverData {
  std::vector<Simplex> simplices;
  bool close = false;
  CechCochain a{2};
  CechCochain f{1};
  std::optional<Rational> d;
  NerveComplex nerve;

  /// a + delta f.
  [[nodiscard]] CechCochain cocycle() const {
    CechCochain r = a;
    const CechCochain df = cocycle_from_potentials(f, nerve);
    for (const auto& [s, v] : df.values) r.add(s, v);
    return r;
  }
};

using DeclValue =
    std::variant<ChartPtr, SuperFunction, CFunction, VectorField, KForm, SuperLieAlgebra, HeisenbergSpec, CoverData>;

struct Declaration {
  std::string kind;  // chart fn cfn vf form algebra heisenberg cover use
  std::string name;
  SourcePos pos;
  ChartPtr chart;
  DeclValue value;
  std::optional<int> declared_parity;
};

struct Document {
  std::vector<Declaration> decls;

  [[nodiscard]] const Declaration* find(const std::string& name) const {
    for (const auto& d : decls)
      if (d.kind != "use" && d.name == name) return &d;
    return nullptr;
  }
  [[nodiscard]] std::vector<const Declaration*> of_kind(const std::string& kind) const {
    std::vector<const Declaration*> out;
    for (const auto& d : decls)
      if (d.kind == kind) out.push_back(&d);
    return out;
  }
  /// Named declaration of the given kind, or the last one when name is empty.
  [[nodiscard]] const Declaration& require(const std::string& kind, const std::string& name = "") const {
    if (name.empty()) {
      auto all = of_kind(kind);
      if (all.empty()) throw std::invalid_argument("document has no " + kind + " declaration");
      return *all.back();
    }
    const Declaration* d = find(name);
    if (!d || d->kind != kind) throw std::invalid_argument("no " + kind + " named '" + name + "'");
    return *d;
  }
};

namespace dsl {

enum class Tok { Number, Ident, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  SourcePos p;
  std::size_t i = 0;
  auto advance = [&]() {
    if (src[i] == '\n') {
      ++p.line;
      p.col = 1;
    } else {
      ++p.col;
    }
    ++i;
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance();
      continue;
    }
    Token t;
    t.pos = p;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      t.kind = Tok::Number;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        t.text += src[i];
        advance();
      }
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      t.kind = Tok::Ident;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance();
      }
    } else if (std::string_view("+-*/^()[]{},;=:").find(ch) != std::string_view::npos) {
      t.kind = Tok::Sym;
      t.text = std::string(1, ch);
      advance();
    } else {
      throw ParseError(p, std::string("unexpected character '") + ch + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = p;
  out.push_back(end);
  return out;
}

/// Expression value: a superfunction, C-valued function, vector field or form.
struct Value {
  enum Kind { Function, CFunc, VField, Form } kind = Function;
  SuperFunction f;
  CFunction c;
  VectorField v;
  KForm w;

  static Value of(SuperFunction x) {
    Value r;
    r.kind = Function;
    r.f = std::move(x);
    return r;
  }
  static Value of(CFunction x) {
    Value r;
    r.kind = CFunc;
    r.c = std::move(x);
    return r;
  }
  static Value of(VectorField x) {
    Value r;
    r.kind = VField;
    r.v = std::move(x);
    return r;
  }
  static Value of(KForm x) {
    Value r;
    r.kind = Form;
    r.w = std::move(x);
    return r;
  }
  [[nodiscard]] const char* kind_name() const {
    switch (kind) {
      case Function: return "function";
      case CFunc: return "C-valued function";
      case VField: return "vector field";
      default: return "form";
    }
  }
  [[nodiscard]] KForm as_form() const { return kind == Form ? w : KForm::from_function(f); }
};

class Parser {
 public:
  Parser(std::vector<Token> toks, Document* doc) : toks_(std::move(toks)), doc_(doc) {}

  void set_chart(ChartPtr c) { chart_ = std::move(c); }

  Document parse_document() {
    while (peek().kind != Tok::End) declaration();
    return *doc_;
  }

  Value parse_standalone() {
    Value v = expr();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after expression");
    return v;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_word(const std::string& s) const { return peek().kind == Tok::Ident && peek().text == s; }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.pos, msg); }
  const Token& expect_sym(const std::string& s) {
    if (!is_sym(s)) fail(peek(), "expected '" + s + "'" + found());
    return next();
  }
  const Token& expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), "expected " + what + found());
    return next();
  }
  void expect_word(const std::string& w) {
    if (!is_word(w)) fail(peek(), "expected '" + w + "'" + found());
    next();
  }
  std::string found() const {
    return peek().kind == Tok::End ? " but reached end of input" : " but found '" + peek().text + "'";
  }

  // ---- declarations ----

  void declaration() {
    const Token& kw = expect_ident("a declaration keyword");
    const std::string& k = kw.text;
    if (k == "chart") return chart_decl(kw);
    if (k == "use") return use_decl(kw);
    if (k == "fn" || k == "cfn" || k == "vf" || k == "form") return value_decl(kw);
    if (k == "algebra") return algebra_decl(kw);
    if (k == "heisenberg") return heisenberg_decl(kw);
    if (k == "cover") return cover_decl(kw);
    fail(kw, "unknown declaration '" + k + "'");
  }

  void check_new_name(const Token& t) {
    if (is_reserved_name(t.text)) fail(t, "'" + t.text + "' is reserved");
    if (doc_->find(t.text)) fail(t, "'" + t.text + "' is already declared");
    for (const auto& d : doc_->decls)
      if (d.kind == "chart" && std::get<ChartPtr>(d.value)->index_of(t.text))
        fail(t, "'" + t.text + "' is a coordinate name");
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> out;
    out.push_back(expect_ident("a coordinate name").text);
    while (is_sym(",")) {
      next();
      out.push_back(expect_ident("a coordinate name").text);
    }
    return out;
  }

  void chart_decl(const Token& kw) {
    const Token& name = expect_ident("a chart name");
    check_new_name(name);
    std::vector<std::string> even, odd;
    int gens = configured_generators();
    for (;;) {
      if (is_word("even")) {
        next();
        even = name_list();
      } else if (is_word("odd")) {
        next();
        odd = name_list();
      } else if (is_word("generators")) {
        next();
        if (peek().kind != Tok::Number) fail(peek(), "expected a generator count" + found());
        gens = std::stoi(next().text);
      } else {
        break;
      }
    }
    expect_sym(";");
    ChartPtr c;
    try {
      c = make_chart(name.text, even, odd, gens);
    } catch (const std::exception& e) {
      fail(name, e.what());
    }
    for (const auto& d : doc_->decls)
      if (d.kind != "chart" && d.kind != "use" && c->index_of(d.name))
        fail(name, "coordinate '" + d.name + "' clashes with a declared name");
    doc_->decls.push_back({"chart", name.text, kw.pos, c, c, std::nullopt});
    chart_ = c;
  }

  void use_decl(const Token& kw) {
    const Token& name = expect_ident("a chart name");
    const Declaration* d = doc_->find(name.text);
    if (!d || d->kind != "chart") fail(name, "undefined chart '" + name.text + "'");
    expect_sym(";");
    chart_ = std::get<ChartPtr>(d->value);
    doc_->decls.push_back({"use", name.text, kw.pos, chart_, chart_, std::nullopt});
  }

  void value_decl(const Token& kw) {
    if (!chart_) fail(kw, "no chart declared before '" + kw.text + "'");
    const Token& name = expect_ident("a name");
    check_new_name(name);
    std::optional<int> parity;
    if (is_sym(":")) {
      next();
      const Token& p = expect_ident("'even' or 'odd'");
      if (p.text == "even")
        parity = 0;
      else if (p.text == "odd")
        parity = 1;
      else
        fail(p, "expected 'even' or 'odd'");
    }
    expect_sym("=");
    const Token& start = peek();
    Value v = expr();
    expect_sym(";");
    Declaration d{kw.text, name.text, kw.pos, chart_, chart_, parity};
    if (kw.text == "fn") {
      if (v.kind != Value::Function) fail(start, std::string("expected a function, got a ") + v.kind_name());
      if (parity && v.f.parity() != *parity)
        fail(start, "parity mismatch: '" + name.text + "' is declared " + (*parity ? "odd" : "even"));
      d.value = v.f;
    } else if (kw.text == "cfn") {
      if (v.kind != Value::CFunc) fail(start, std::string("expected a C-valued function (... c0 + ... c1), got a ") + v.kind_name());
      if (parity && v.c.parity() != *parity)
        fail(start, "parity mismatch: '" + name.text + "' is declared " + (*parity ? "odd" : "even"));
      d.value = v.c;
    } else if (kw.text == "vf") {
      if (v.kind == Value::Function && v.f.is_zero()) v = Value::of(VectorField(chart_));
      if (v.kind != Value::VField) fail(start, std::string("expected a vector field, got a ") + v.kind_name());
      if (parity && v.v.parity() != *parity)
        fail(start, "parity mismatch: '" + name.text + "' is declared " + (*parity ? "odd" : "even"));
      d.value = v.v;
    } else {
      if (v.kind != Value::Form && v.kind != Value::Function)
        fail(start, std::string("expected a form, got a ") + v.kind_name());
      KForm w = v.as_form();
      if (parity && w.parity() != *parity)
        fail(start, "parity mismatch: '" + name.text + "' is declared " + (*parity ? "odd" : "even"));
      d.value = w;
    }
    doc_->decls.push_back(std::move(d));
  }

  Rational rational_literal() {
    bool neg = false;
    while (is_sym("-") || is_sym("+")) {
      if (next().text == "-") neg = !neg;
    }
    if (peek().kind != Tok::Number) fail(peek(), "expected a number" + found());
    Rational r(Integer(next().text));
    if (is_sym("/")) {
      next();
      if (peek().kind != Tok::Number) fail(peek(), "expected a denominator" + found());
      const Token& den = next();
      Integer q(den.text);
      if (q == 0) fail(den, "division by zero");
      r /= Rational(q);
    }
    return neg ? Rational(-r) : r;
  }

  std::vector<int> int_list() {
    std::vector<int> out;
    for (;;) {
      if (peek().kind != Tok::Number) fail(peek(), "expected an integer" + found());
      out.push_back(std::stoi(next().text));
      if (!is_sym(",")) break;
      next();
    }
    return out;
  }

  Matrix<Rational> matrix_literal() {
    Matrix<Rational> m;
    expect_sym("[");
    for (;;) {
      expect_sym("[");
      std::vector<Rational> row;
      if (!is_sym("]")) {
        for (;;) {
          row.push_back(rational_literal());
          if (!is_sym(",")) break;
          next();
        }
      }
      expect_sym("]");
      m.push_back(std::move(row));
      if (!is_sym(",")) break;
      next();
    }
    expect_sym("]");
    return m;
  }

  /// coef*eK terms, e.g. 2*e3 - 1/2*e1.
  std::vector<Rational> linear_combination(std::size_t n) {
    std::vector<Rational> v(n, Rational(0));
    bool first = true;
    for (;;) {
      Rational sign(1);
      if (is_sym("+") || is_sym("-")) {
        if (next().text == "-") sign = -1;
      } else if (!first) {
        break;
      }
      Rational coef(1);
      if (peek().kind == Tok::Number) {
        coef = rational_literal();
        if (is_sym("*")) next();
      }
      if (peek().kind == Tok::Number && coef == 0) fail(peek(), "malformed coefficient");
      const Token& e = expect_ident("a basis element e<k>");
      if (e.text == "0" || e.text.size() < 2 || e.text[0] != 'e' ||
          !std::all_of(e.text.begin() + 1, e.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        fail(e, "expected a basis element e<k>");
      const std::size_t k = static_cast<std::size_t>(std::stoul(e.text.substr(1)));
      if (k < 1 || k > n) fail(e, "basis index out of range");
      v[k - 1] += sign * coef;
      first = false;
    }
    return v;
  }

  void algebra_decl(const Token& kw) {
    const Token& name = expect_ident("an algebra name");
    check_new_name(name);
    expect_word("parities");
    const Token& pt = peek();
    std::vector<int> par = int_list();
    for (int p : par)
      if (p != 0 && p != 1) fail(pt, "parities must be 0 or 1");
    SuperLieAlgebra g(par);
    std::map<std::pair<std::size_t, std::size_t>, bool> seen;
    if (is_word("bracket")) {
      next();
      for (;;) {
        const Token& open = expect_sym("[");
        if (peek().kind != Tok::Number) fail(peek(), "expected an index" + found());
        const std::size_t i = std::stoul(next().text);
        expect_sym(",");
        if (peek().kind != Tok::Number) fail(peek(), "expected an index" + found());
        const std::size_t j = std::stoul(next().text);
        expect_sym("]");
        expect_sym("=");
        if (i < 1 || j < 1 || i > par.size() || j > par.size()) fail(open, "bracket index out of range");
        auto key = std::minmax(i, j);
        if (seen[key]) fail(open, "bracket [" + std::to_string(i) + "," + std::to_string(j) + "] given twice");
        seen[key] = true;
        g.set_bracket(i - 1, j - 1, linear_combination(par.size()));
        if (!is_sym(",")) break;
        next();
      }
    }
    expect_sym(";");
    try {
      g.validate();
    } catch (const std::exception& e) {
      fail(name, e.what());
    }
    doc_->decls.push_back({"algebra", name.text, kw.pos, nullptr, g, std::nullopt});
  }

  void heisenberg_decl(const Token& kw) {
    const Token& name = expect_ident("a name");
    check_new_name(name);
    expect_word("parities");
    const Token& pt = peek();
    std::vector<int> par = int_list();
    for (int p : par)
      if (p != 0 && p != 1) fail(pt, "parities must be 0 or 1");
    HeisenbergSpec s;
    const Token& which = expect_ident("'omega', 'omega_t' or 'omega0'");
    try {
      if (which.text == "omega") {
        s = HeisenbergSpec::from_matrix(par, matrix_literal());
      } else if (which.text == "omega_t") {
        s = HeisenbergSpec::from_row_second(par, matrix_literal());
      } else if (which.text == "omega0") {
        auto m0 = matrix_literal();
        expect_word("omega1");
        auto m1 = matrix_literal();
        s.parity = par;
        s.omega0 = m0;
        s.omega1 = m1;
        s.validate();
      } else {
        fail(which, "expected 'omega', 'omega_t' or 'omega0'");
      }
    } catch (const AlgebraError& e) {
      fail(which, e.what());
    }
    expect_sym(";");
    doc_->decls.push_back({"heisenberg", name.text, kw.pos, nullptr, s, std::nullopt});
  }

  Simplex vertex_list() {
    Simplex s;
    while (peek().kind == Tok::Number) s.push_back(std::stoi(next().text));
    return s;
  }

  void cover_decl(const Token& kw) {
    const Token& name = expect_ident("a cover name");
    check_new_name(name);
    expect_sym("{");
    CoverData cd;
    struct Pending {
      Token at;
      bool is_a;
      Simplex s;
      Rational v;
    };
    std::vector<Pending> values;
    while (!is_sym("}")) {
      const Token& item = expect_ident("'simplex', 'faces', 'a', 'f' or 'd'");
      if (item.text == "simplex") {
        Simplex s = vertex_list();
        if (s.empty()) fail(item, "simplex needs vertices");
        cd.simplices.push_back(s);
      } else if (item.text == "faces") {
        cd.close = true;
      } else if (item.text == "a" || item.text == "f") {
        Simplex s = vertex_list();
        const std::size_t want = item.text == "a" ? 3 : 2;
        if (s.size() != want) fail(item, "'" + item.text + "' takes " + std::to_string(want) + " vertices");
        expect_sym("=");
        values.push_back({item, item.text == "a", s, rational_literal()});
      } else if (item.text == "d") {
        expect_sym("=");
        cd.d = rational_literal();
        if (is_zero(*cd.d)) fail(item, "d must be nonzero");
      } else {
        fail(item, "unknown cover item '" + item.text + "'");
      }
      expect_sym(";");
    }
    expect_sym("}");
    if (is_sym(";")) next();
    try {
      cd.nerve = build_nerve(cd.close ? closure(cd.simplices) : cd.simplices);
    } catch (const CechError& e) {
      fail(name, e.what());
    }
    for (const auto& p : values) {
      Simplex sorted = p.s;
      std::sort(sorted.begin(), sorted.end());
      if (!cd.nerve.find(sorted)) fail(p.at, "simplex is not in the nerve");
      try {
        (p.is_a ? cd.a : cd.f).add(p.s, p.v);
      } catch (const CechError& e) {
        fail(p.at, e.what());
      }
    }
    doc_->decls.push_back({"cover", name.text, kw.pos, nullptr, cd, std::nullopt});
  }

  // ---- expressions ----

  Value expr() {
    Value v = term();
    while (is_sym("+") || is_sym("-")) {
      const Token& op = next();
      Value r = term();
      v = add(op, v, r, op.text == "-");
    }
    return v;
  }

  bool starts_primary() const {
    return peek().kind == Tok::Number || peek().kind == Tok::Ident || is_sym("(");
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (is_sym("*")) {
        const Token& op = next();
        v = mul(op, v, unary());
      } else if (is_sym("/")) {
        const Token& op = next();
        v = div(op, v, unary());
      } else if (starts_primary()) {
        const Token& op = peek();
        v = mul(op, v, unary());
      } else {
        break;
      }
    }
    return v;
  }

  Value unary() {
    if (is_sym("-")) {
      next();
      return negate(unary());
    }
    if (is_sym("+")) {
      next();
      return unary();
    }
    return power();
  }

  Value power() {
    Value v = primary();
    while (is_sym("^")) {
      const Token& op = next();
      if (!starts_primary()) fail(peek(), "expected an operand after '^'" + found());
      const Token& rhs_tok = peek();
      Value r = primary();
      v = caret(op, rhs_tok, v, r);
    }
    return v;
  }

  Value primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      return Value::of(SuperFunction::constant(chart_, Gauss(Rational(Integer(t.text)))));
    }
    if (is_sym("(")) {
      next();
      Value v = expr();
      expect_sym(")");
      return v;
    }
    if (t.kind == Tok::Ident) {
      next();
      return identifier(t);
    }
    fail(t, "expected an operand" + found());
  }

  Value identifier(const Token& t) {
    const std::string& n = t.text;
    const Chart& c = *chart_;
    if (n == "d" && is_sym("/")) {
      next();
      const Token& dz = expect_ident("d<coordinate> after 'd/'");
      if (dz.text.size() < 2 || dz.text[0] != 'd' || !c.index_of(dz.text.substr(1)))
        fail(dz, "expected d<coordinate> after 'd/'");
      return Value::of(VectorField::coordinate(chart_, *c.index_of(dz.text.substr(1))));
    }
    if (n == "i") return Value::of(SuperFunction::constant(chart_, Gauss::imag_unit()));
    if (n == "c0") return Value::of(CFunction{SuperFunction::constant(chart_, Gauss(1)), SuperFunction(chart_)});
    if (n == "c1") return Value::of(CFunction{SuperFunction(chart_), SuperFunction::constant(chart_, Gauss(1))});
    if (n.size() > 2 && n.rfind("th", 0) == 0 &&
        std::all_of(n.begin() + 2, n.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const int k = std::stoi(n.substr(2));
      if (k < 1 || k > c.generators)
        fail(t, "generator " + n + " outside 1.." + std::to_string(c.generators));
      return Value::of(SuperFunction::generator(chart_, k));
    }
    if (auto z = c.index_of(n)) return Value::of(SuperFunction::coordinate(chart_, *z));
    if (n.size() > 1 && n[0] == 'd')
      if (auto z = c.index_of(n.substr(1))) return Value::of(KForm::differential(chart_, *z));
    if (const Declaration* d = doc_->find(n)) {
      if (!d->chart || !(*d->chart == c)) fail(t, "'" + n + "' is not defined on chart " + c.name);
      if (auto* f = std::get_if<SuperFunction>(&d->value)) return Value::of(*f);
      if (auto* f = std::get_if<CFunction>(&d->value)) return Value::of(*f);
      if (auto* f = std::get_if<VectorField>(&d->value)) return Value::of(*f);
      if (auto* f = std::get_if<KForm>(&d->value)) return Value::of(*f);
      fail(t, "'" + n + "' cannot be used in an expression");
    }
    if (n == "d") fail(t, "'d' must be followed by '/d<coordinate>'");
    fail(t, "undefined identifier '" + n + "'");
  }

  static std::optional<GrassmannNumber> constant_of(const Value& v) {
    if (v.kind != Value::Function || !v.f.is_constant()) return std::nullopt;
    return v.f.as_constant();
  }

  Value negate(Value v) {
    switch (v.kind) {
      case Value::Function: v.f = -v.f; break;
      case Value::CFunc: v.c = -v.c; break;
      case Value::VField: v.v = -v.v; break;
      case Value::Form: v.w = -v.w; break;
    }
    return v;
  }

  Value add(const Token& op, Value a, const Value& b, bool subtract) {
    auto kinds = [&]() {
      fail(op, std::string("cannot add a ") + a.kind_name() + " and a " + b.kind_name());
    };
    if (a.kind == Value::Form || b.kind == Value::Form) {
      if ((a.kind != Value::Form && a.kind != Value::Function) || (b.kind != Value::Form && b.kind != Value::Function))
        kinds();
      KForm x = a.as_form(), y = b.as_form();
      if (!x.is_zero() && !y.is_zero() && x.degree() != y.degree())
        fail(op, "cannot add forms of degree " + std::to_string(x.degree()) + " and " + std::to_string(y.degree()));
      if (x.is_zero()) x = KForm(chart_, y.degree());
      return Value::of(subtract ? x - y : x + y);
    }
    if (a.kind == Value::VField && b.kind == Value::Function && b.f.is_zero()) return a;
    if (b.kind == Value::VField && a.kind == Value::Function && a.f.is_zero()) return subtract ? negate(b) : b;
    if (a.kind == Value::CFunc && b.kind == Value::Function && b.f.is_zero()) return a;
    if (b.kind == Value::CFunc && a.kind == Value::Function && a.f.is_zero()) return subtract ? negate(b) : b;
    if (a.kind != b.kind) kinds();
    switch (a.kind) {
      case Value::Function: a.f = subtract ? a.f - b.f : a.f + b.f; break;
      case Value::CFunc: a.c = subtract ? a.c - b.c : a.c + b.c; break;
      case Value::VField: a.v = subtract ? a.v - b.v : a.v + b.v; break;
      default: break;
    }
    return a;
  }

  Value mul(const Token& op, const Value& a, const Value& b) {
    if (a.kind == Value::Function) {
      switch (b.kind) {
        case Value::Function: return Value::of(a.f * b.f);
        case Value::CFunc: return Value::of(a.f * b.c);
        case Value::VField: return Value::of(a.f * b.v);
        case Value::Form: return Value::of(a.f * b.w);
      }
    }
    if (b.kind == Value::Function) {
      auto k = constant_of(b);
      if (a.kind == Value::Form) return Value::of(wedge(a.w, KForm::from_function(b.f)));
      if (k && k->is_scalar()) {
        const Gauss s = k->body();
        if (a.kind == Value::CFunc) return Value::of(s * a.c);
        if (a.kind == Value::VField) return Value::of(s * a.v);
      }
      fail(op, std::string("a ") + a.kind_name() + " can only be multiplied on the right by a scalar");
    }
    if (a.kind == Value::Form && b.kind == Value::Form) fail(op, "use '^' to wedge forms");
    fail(op, std::string("cannot multiply a ") + a.kind_name() + " by a " + b.kind_name());
  }

  Value div(const Token& op, const Value& a, const Value& b) {
    auto k = constant_of(b);
    if (!k) fail(op, "division is only by constants");
    if (k->body().is_zero()) fail(op, "division by a constant with zero body");
    const GrassmannNumber inv = k->inverse();
    if (a.kind == Value::Function) return Value::of(a.f * SuperFunction::constant(chart_, inv));
    if (a.kind == Value::Form) return Value::of(wedge(a.w, KForm::from_function(SuperFunction::constant(chart_, inv))));
    if (!inv.is_scalar()) fail(op, std::string("a ") + a.kind_name() + " can only be divided by a scalar");
    if (a.kind == Value::CFunc) return Value::of(inv.body() * a.c);
    return Value::of(inv.body() * a.v);
  }

  Value caret(const Token& op, const Token& rhs_tok, const Value& a, const Value& b) {
    if (a.kind == Value::Function && rhs_tok.kind == Tok::Number) {
      auto k = constant_of(b);
      return Value::of(a.f.pow(std::stoi(rhs_tok.text)));
      (void)k;
    }
    if ((a.kind == Value::Form || a.kind == Value::Function) && (b.kind == Value::Form || b.kind == Value::Function))
      return Value::of(wedge(a.as_form(), b.as_form()));
    fail(op, std::string("'^' needs forms or an integer exponent, got a ") + a.kind_name() + " and a " +
                 b.kind_name());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Document* doc_;
  ChartPtr chart_;
};

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline std::string render_matrix(const Matrix<Rational>& m) {
  std::vector<std::string> rows;
  for (const auto& r : m) {
    std::vector<std::string> e;
    for (const auto& x : r) e.push_back(to_string(x));
    rows.push_back("[" + join(e, ",") + "]");
  }
  return "[" + join(rows, ",") + "]";
}

inline std::string render_simplex(const Simplex& s) {
  std::vector<std::string> v;
  for (int x : s) v.push_back(std::to_string(x));
  return join(v, " ");
}

}  // namespace dsl

inline Document parse(std::string_view text) {
  Document doc;
  dsl::Parser p(dsl::lex(text), &doc);
  return p.parse_document();
}

/// Evaluates an expression on `chart` with the document's named objects in scope.
inline dsl::Value parse_expression(const Document& doc, const ChartPtr& chart, std::string_view text) {
  Document copy = doc;
  dsl::Parser p(dsl::lex(text), &copy);
  p.set_chart(chart);
  return p.parse_standalone();
}

inline SuperFunction parse_function(const Document& doc, const ChartPtr& chart, std::string_view text) {
  auto v = parse_expression(doc, chart, text);
  if (v.kind != dsl::Value::Function) throw ParseError({1, 1}, std::string("expected a function, got a ") + v.kind_name());
  return v.f;
}

inline CFunction parse_cfunction(const Document& doc, const ChartPtr& chart, std::string_view text) {
  auto v = parse_expression(doc, chart, text);
  if (v.kind == dsl::Value::Function && v.f.is_zero()) return CFunction::zero(chart);
  if (v.kind != dsl::Value::CFunc)
    throw ParseError({1, 1}, std::string("expected a C-valued function (... c0 + ... c1), got a ") + v.kind_name());
  return v.c;
}

inline KForm parse_form(const Document& doc, const ChartPtr& chart, std::string_view text) {
  auto v = parse_expression(doc, chart, text);
  if (v.kind != dsl::Value::Form && v.kind != dsl::Value::Function)
    throw ParseError({1, 1}, std::string("expected a form, got a ") + v.kind_name());
  return v.as_form();
}

inline std::string render(const Document& doc) {
  using dsl::join;
  std::string out;
  ChartPtr current;
  for (const auto& d : doc.decls) {
    if (d.kind == "chart") {
      const auto& c = *std::get<ChartPtr>(d.value);
      out += "chart " + d.name;
      if (!c.even.empty()) out += " even " + join(c.even, ",");
      if (!c.odd.empty()) out += " odd " + join(c.odd, ",");
      if (c.generators != configured_generators()) out += " generators " + std::to_string(c.generators);
      out += ";\n";
      current = std::get<ChartPtr>(d.value);
      continue;
    }
    if (d.kind == "use") continue;
    if (d.chart && d.chart != current) {
      out += "use " + d.chart->name + ";\n";
      current = d.chart;
    }
    std::string ann = d.declared_parity ? (*d.declared_parity ? " : odd" : " : even") : "";
    if (d.kind == "fn") out += "fn " + d.name + ann + " = " + std::get<SuperFunction>(d.value).to_string() + ";\n";
    if (d.kind == "cfn") out += "cfn " + d.name + ann + " = " + std::get<CFunction>(d.value).to_string() + ";\n";
    if (d.kind == "vf") out += "vf " + d.name + ann + " = " + std::get<VectorField>(d.value).to_string() + ";\n";
    if (d.kind == "form") out += "form " + d.name + ann + " = " + std::get<KForm>(d.value).to_string() + ";\n";
    if (d.kind == "algebra") {
      const auto& g = std::get<SuperLieAlgebra>(d.value);
      std::vector<std::string> par, br;
      for (int p : g.parity) par.push_back(std::to_string(p));
      for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i; j < g.dim(); ++j) {
          std::string lc;
          for (std::size_t k = 0; k < g.dim(); ++k)
            if (!is_zero(g.c[i][j][k])) detail::append_term(lc, Gauss(g.c[i][j][k]), "e" + std::to_string(k + 1));
          if (!lc.empty()) br.push_back("[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "] = " + lc);
        }
      out += "algebra " + d.name + " parities " + join(par, ",");
      if (!br.empty()) out += " bracket " + join(br, ", ");
      out += ";\n";
    }
    if (d.kind == "heisenberg") {
      const auto& s = std::get<HeisenbergSpec>(d.value);
      std::vector<std::string> par;
      for (int p : s.parity) par.push_back(std::to_string(p));
      auto m = zeros<Rational>(s.n(), s.n());
      for (std::size_t i = 0; i < s.n(); ++i)
        for (std::size_t j = 0; j < s.n(); ++j) m[i][j] = s.omega(i, j);
      out += "heisenberg " + d.name + " parities " + join(par, ",") + " omega " + dsl::render_matrix(m) + ";\n";
    }
    if (d.kind == "cover") {
      const auto& cd = std::get<CoverData>(d.value);
      out += "cover " + d.name + " {\n";
      for (const auto& s : cd.simplices) out += "  simplex " + dsl::render_simplex(s) + ";\n";
      if (cd.close) out += "  faces;\n";
      for (const auto& [s, v] : cd.a.values) out += "  a " + dsl::render_simplex(s) + " = " + to_string(v) + ";\n";
      for (const auto& [s, v] : cd.f.values) out += "  f " + dsl::render_simplex(s) + " = " + to_string(v) + ";\n";
      if (cd.d) out += "  d = " + to_string(*cd.d) + ";\n";
      out += "}\n";
    }
  }
  return out;
}

/// Structural equality of two documents (charts by content).
inline bool same_document(const Document& a, const Document& b) {
  std::vector<const Declaration*> x, y;
  for (const auto& d : a.decls)
    if (d.kind != "use") x.push_back(&d);
  for (const auto& d : b.decls)
    if (d.kind != "use") y.push_back(&d);
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Declaration& p = *x[i];
    const Declaration& q = *y[i];
    if (p.kind != q.kind || p.name != q.name || p.declared_parity != q.declared_parity) return false;
    if (p.kind == "chart") {
      if (!(*std::get<ChartPtr>(p.value) == *std::get<ChartPtr>(q.value))) return false;
    } else if (p.kind == "fn") {
      if (!(std::get<SuperFunction>(p.value) == std::get<SuperFunction>(q.value))) return false;
    } else if (p.kind == "cfn") {
      if (!(std::get<CFunction>(p.value) == std::get<CFunction>(q.value))) return false;
    } else if (p.kind == "vf") {
      if (!(std::get<VectorField>(p.value) == std::get<VectorField>(q.value))) return false;
    } else if (p.kind == "form") {
      if (!(std::get<KForm>(p.value) == std::get<KForm>(q.value))) return false;
    } else if (p.kind == "algebra") {
      const auto& g = std::get<SuperLieAlgebra>(p.value);
      const auto& h = std::get<SuperLieAlgebra>(q.value);
      if (g.parity != h.parity || g.c != h.c) return false;
    } else if (p.kind == "heisenberg") {
      const auto& g = std::get<HeisenbergSpec>(p.value);
      const auto& h = std::get<HeisenbergSpec>(q.value);
      if (g.parity != h.parity || g.omega0 != h.omega0 || g.omega1 != h.omega1) return false;
    } else if (p.kind == "cover") {
      const auto& g = std::get<CoverData>(p.value);
      const auto& h = std::get<CoverData>(q.value);
      if (g.simplices != h.simplices || g.close != h.close || !(g.a == h.a) || !(g.f == h.f) || g.d != h.d)
        return false;
    }
  }
  return true;
}

}  // namespace ssp
