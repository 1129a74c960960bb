#pragma once

#include "supersymp/charts.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ssp {

/// Ordered coordinate indices of a wedge word: even indices strictly
/// increasing, odd indices non-decreasing, evens before odds.
using Word = std::vector<int>;

struct FormError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Sorts a word of differentials. Returns 0 for a vanishing word, else the sign.
/// Adjacent exchange: dz^dw = -(-1)^{e(z)e(w)} dw^dz.
inline int canonicalize_word(const Chart& c, Word& w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
      std::swap(w[j - 1], w[j]);
      if (!(c.parity(w[j - 1]) && c.parity(w[j]))) sign = -sign;
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && c.parity(w[i]) == 0) return 0;
  return sign;
}

inline int odd_count(const Chart& c, const Word& w) {
  int n = 0;
  for (int z : w) n += c.parity(z);
  return n;
}

/// Differential form of fixed degree with superfunction coefficients on the left.
class KForm {
 public:
  using Terms = std::map<Word, SuperFunction>;

  KForm() = default;
  KForm(ChartPtr c, int degree) : chart_(std::move(c)), degree_(degree) {
    if (degree < 0) throw FormError("negative form degree");
  }

  static KForm from_function(const SuperFunction& f) {
    KForm w(f.chart(), 0);
    w.add_term({}, f);
    return w;
  }
  static KForm differential(const ChartPtr& c, std::size_t z) {
    KForm w(c, 1);
    w.add_term({static_cast<int>(z)}, SuperFunction::constant(c, Gauss(1)));
    return w;
  }
  static KForm differential(const ChartPtr& c, const std::string& n) {
    return differential(c, c->require(n));
  }

  [[nodiscard]] const ChartPtr& chart() const { return chart_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  /// Adds f * dW for an arbitrary (not necessarily sorted) word W.
  void add_term(Word w, const SuperFunction& f) {
    if (static_cast<int>(w.size()) != degree_) throw FormError("word length differs from degree");
    if (f.is_zero()) return;
    int s = canonicalize_word(*chart_, w);
    if (s == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, s > 0 ? f : -f);
    } else {
      if (s > 0)
        it->second += f;
      else
        it->second -= f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] SuperFunction coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? SuperFunction(chart_) : it->second;
  }

  [[nodiscard]] SuperFunction as_function() const {
    if (degree_ != 0) throw FormError("form of positive degree is not a function");
    return coefficient({});
  }

  KForm& operator+=(const KForm& o) {
    check(o);
    for (const auto& [w, f] : o.terms_) add_term(w, f);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check(o);
    for (const auto& [w, f] : o.terms_) add_term(w, -f);
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(KForm a) {
    for (auto& [w, f] : a.terms_) f = -f;
    return a;
  }
  friend KForm operator*(const Gauss& s, const KForm& a) {
    KForm r(a.chart_, a.degree_);
    for (const auto& [w, f] : a.terms_) r.add_term(w, s * f);
    return r;
  }
  /// Left multiplication g * omega.
  friend KForm operator*(const SuperFunction& g, const KForm& a) {
    KForm r(a.chart_, a.degree_);
    for (const auto& [w, f] : a.terms_) r.add_term(w, g * f);
    return r;
  }
  friend bool operator==(const KForm& a, const KForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const KForm& a, const KForm& b) { return !(a == b); }

  /// Homogeneous part of parity p; term parity is eps(coefficient) + number of odd differentials.
  [[nodiscard]] KForm part(int p) const {
    KForm r(chart_, degree_);
    for (const auto& [w, f] : terms_) {
      int shift = odd_count(*chart_, w) & 1;
      r.add_term(w, f.part((p + shift) & 1));
    }
    return r;
  }

  [[nodiscard]] int parity() const {
    bool e = !part(0).is_zero(), o = !part(1).is_zero();
    if (e && o) return -1;
    return o ? 1 : 0;
  }

  [[nodiscard]] std::string word_text(const Word& w) const {
    std::string s;
    for (int z : w) s += (s.empty() ? "d" : "^d") + chart_->coord_name(z);
    return s;
  }

  [[nodiscard]] std::string to_string() const {
    if (degree_ == 0) return coefficient({}).to_string();
    std::string out;
    for (const auto& [w, f] : terms_) {
      std::string wt = word_text(w);
      if (f.size() == 1) {
        const auto& [m, c] = *f.terms().begin();
        std::string mono = f.monomial_text(m);
        detail::append_term(out, c, mono.empty() ? wt : mono + "*" + wt);
      } else {
        out += (out.empty() ? "" : " + ") + std::string("(") + f.to_string() + ")*" + wt;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check(const KForm& o) {
    if (o.is_zero()) return;
    if (!chart_) {
      chart_ = o.chart_;
      degree_ = o.degree_;
      return;
    }
    require_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw FormError("adding forms of different degree");
  }

  ChartPtr chart_;
  int degree_ = 0;
  Terms terms_;
};

/// (f dA) ^ (g dB) = (-1)^{eps(g) * #odd(A)} f g dA^dB.
inline KForm wedge(const KForm& a, const KForm& b) {
  require_same_chart(a.chart(), b.chart());
  const Chart& c = *a.chart();
  KForm r(a.chart(), a.degree() + b.degree());
  for (const auto& [wa, fa] : a.terms()) {
    int oa = odd_count(c, wa) & 1;
    for (const auto& [wb, fb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      for (int p = 0; p < 2; ++p) {
        SuperFunction g = fb.part(p);
        if (g.is_zero()) continue;
        SuperFunction coef = fa * g;
        r.add_term(w, (p & oa) ? -coef : coef);
      }
    }
  }
  return r;
}

/// d(f dA) = sum_z dz (d_z f) ^ dA, coefficients moved to the left.
inline KForm ext_d(const KForm& form) {
  const Chart& c = *form.chart();
  KForm r(form.chart(), form.degree() + 1);
  for (const auto& [w, f] : form.terms())
    for (std::size_t z = 0; z < c.dim(); ++z) {
      SuperFunction g = f.partial(z);
      if (g.is_zero()) continue;
      Word nw{static_cast<int>(z)};
      nw.insert(nw.end(), w.begin(), w.end());
      if (c.parity(z) == 0) {
        r.add_term(nw, g);
      } else {
        r.add_term(nw, g.part(0));
        r.add_term(nw, -g.part(1));
      }
    }
  return r;
}

inline KForm ext_d(const SuperFunction& f) { return ext_d(KForm::from_function(f)); }

/// Contraction with the coordinate field d/dz: a derivation of bidegree (-1, eps(z)).
inline KForm contract_coordinate(std::size_t z, const KForm& form) {
  if (form.degree() == 0) throw FormError("contraction of a 0-form");
  const Chart& c = *form.chart();
  const int ez = c.parity(z);
  KForm r(form.chart(), form.degree() - 1);
  for (const auto& [w, f] : form.terms()) {
    int sign = 1;
    for (std::size_t m = 0; m < w.size(); ++m) {
      if (w[m] == static_cast<int>(z)) {
        Word rest = w;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(m));
        for (int p = 0; p < 2; ++p) {
          SuperFunction g = f.part(p);
          if (g.is_zero()) continue;
          int s = sign * ((ez & p) ? -1 : 1);
          r.add_term(rest, s > 0 ? g : -g);
        }
      }
      if (!(ez && c.parity(w[m]))) sign = -sign;
    }
  }
  return r;
}

/// i_X omega = sum_z X^z i_{d/dz} omega.
inline KForm contract(const VectorField& x, const KForm& form) {
  require_same_chart(x.chart(), form.chart());
  KForm r(form.chart(), form.degree() - 1 < 0 ? 0 : form.degree() - 1);
  if (form.degree() == 0) throw FormError("contraction of a 0-form");
  for (std::size_t z = 0; z < x.chart()->dim(); ++z)
    if (!x[z].is_zero()) r += x[z] * contract_coordinate(z, form);
  return r;
}

/// i_{X1,...,Xl} = i_{X1} o ... o i_{Xl}.
inline KForm contract(const std::vector<VectorField>& xs, const KForm& form) {
  KForm r = form;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) r = contract(*it, r);
  return r;
}

/// L(X) = i_X d + d i_X.
inline KForm lie_derivative(const VectorField& x, const KForm& form) {
  KForm r = contract(x, ext_d(form));
  if (form.degree() > 0) r += ext_d(contract(x, form));
  return r;
}

/// omega-bar = omega_0 (x) c0 + omega_1 (x) c1.
struct CKForm {
  KForm part0;
  KForm part1;

  [[nodiscard]] const KForm& component(int alpha) const { return alpha ? part1 : part0; }
  [[nodiscard]] const ChartPtr& chart() const { return part0.chart(); }
  [[nodiscard]] int degree() const { return part0.degree(); }
  [[nodiscard]] bool is_zero() const { return part0.is_zero() && part1.is_zero(); }
  friend bool operator==(const CKForm& a, const CKForm& b) {
    return a.part0 == b.part0 && a.part1 == b.part1;
  }
  [[nodiscard]] std::string to_string() const {
    return "(" + part0.to_string() + ")*c0 + (" + part1.to_string() + ")*c1";
  }
};

inline CKForm double_form(const KForm& w) { return {w.part(0), w.part(1)}; }
inline KForm undouble(const CKForm& cw) { return cw.part0 + cw.part1; }

inline CKForm contract(const VectorField& x, const CKForm& cw) {
  return {contract(x, cw.part0), contract(x, cw.part1)};
}
inline CKForm ext_d(const CKForm& cw) { return {ext_d(cw.part0), ext_d(cw.part1)}; }
inline CKForm ext_d(const CFunction& f) { return {ext_d(f.f0), ext_d(f.f1)}; }
inline CKForm lie_derivative(const VectorField& x, const CKForm& cw) {
  return {lie_derivative(x, cw.part0), lie_derivative(x, cw.part1)};
}

}  // namespace ssp
