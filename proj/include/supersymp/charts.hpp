#pragma once

#include "supersymp/grassmann.hpp"

#include <algorithm>
#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ssp {

struct ChartError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Coordinate chart of dimension p|q. Coordinates are indexed 0..p-1 (even)
/// then p..p+q-1 (odd). In monomial masks, bit k < N is th_{k+1} and bit N+j is
/// the j-th odd coordinate.
struct Chart {
  std::string name;
  std::vector<std::string> even;
  std::vector<std::string> odd;
  int generators = kDefaultGenerators;

  [[nodiscard]] std::size_t p() const { return even.size(); }
  [[nodiscard]] std::size_t q() const { return odd.size(); }
  [[nodiscard]] std::size_t dim() const { return even.size() + odd.size(); }
  [[nodiscard]] int parity(std::size_t z) const { return z >= even.size() ? 1 : 0; }
  [[nodiscard]] const std::string& coord_name(std::size_t z) const {
    return z < p() ? even.at(z) : odd.at(z - p());
  }
  [[nodiscard]] Mask odd_bit(std::size_t z) const {
    return Mask{1} << (generators + static_cast<int>(z - p()));
  }
  [[nodiscard]] Mask generator_bits() const {
    return generators == 0 ? Mask{0} : (generators >= 64 ? ~Mask{0} : (Mask{1} << generators) - 1);
  }
  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& n) const {
    for (std::size_t z = 0; z < dim(); ++z)
      if (coord_name(z) == n) return z;
    return std::nullopt;
  }
  [[nodiscard]] std::size_t require(const std::string& n) const {
    auto z = index_of(n);
    if (!z) throw ChartError("unknown coordinate '" + n + "' in chart " + name);
    return *z;
  }
  friend bool operator==(const Chart& a, const Chart& b) {
    return a.even == b.even && a.odd == b.odd && a.generators == b.generators;
  }
};

using ChartPtr = std::shared_ptr<const Chart>;

inline bool is_reserved_name(const std::string& n) {
  if (n == "i" || n == "c0" || n == "c1" || n == "d") return true;
  if (n.size() > 2 && n.rfind("th", 0) == 0 &&
      std::all_of(n.begin() + 2, n.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return true;
  return false;
}

inline ChartPtr make_chart(std::string name, std::vector<std::string> even,
                           std::vector<std::string> odd, int generators = configured_generators()) {
  auto c = std::make_shared<Chart>();
  c->name = std::move(name);
  c->even = std::move(even);
  c->odd = std::move(odd);
  c->generators = generators;
  if (generators < 0) throw ChartError("negative generator count");
  if (generators + static_cast<int>(c->q()) > kMaxOddSlots)
    throw ChartError("too many odd slots: generators + odd coordinates must be <= 64");
  std::set<std::string> seen;
  for (std::size_t z = 0; z < c->dim(); ++z) {
    const auto& n = c->coord_name(z);
    if (n.empty()) throw ChartError("empty coordinate name");
    if (is_reserved_name(n)) throw ChartError("reserved coordinate name '" + n + "'");
    if (!seen.insert(n).second) throw ChartError("duplicate coordinate name '" + n + "'");
  }
  for (const auto& n : seen)
    if (n.size() > 1 && n[0] == 'd' && seen.count(n.substr(1)))
      throw ChartError("coordinate name '" + n + "' clashes with the differential of '" +
                       n.substr(1) + "'");
  return c;
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw ChartError("chart mismatch");
}

/// Monomial th_S * x^exps * xi_T, with S and T packed in one mask.
struct Mono {
  std::vector<int> exps;
  Mask mask = 0;
  auto operator<=>(const Mono&) const = default;
  bool operator==(const Mono&) const = default;
  [[nodiscard]] int degree() const {
    int d = 0;
    for (int e : exps) d += e;
    return d;
  }
  [[nodiscard]] int parity() const { return popcount(mask) & 1; }
};

/// Polynomial superfunction on a chart with Q(i) coefficients.
class SuperFunction {
 public:
  using Terms = std::map<Mono, Gauss>;

  SuperFunction() = default;
  explicit SuperFunction(ChartPtr chart) : chart_(std::move(chart)) {}

  static SuperFunction constant(const ChartPtr& c, const Gauss& v) {
    SuperFunction f(c);
    f.add_term(Mono{std::vector<int>(c->p(), 0), 0}, v);
    return f;
  }
  static SuperFunction constant(const ChartPtr& c, const GrassmannNumber& g) {
    if (g.generator_count() != c->generators) throw DimensionError("generator count mismatch");
    SuperFunction f(c);
    for (const auto& [m, v] : g.terms()) f.add_term(Mono{std::vector<int>(c->p(), 0), m}, v);
    return f;
  }
  static SuperFunction coordinate(const ChartPtr& c, std::size_t z) {
    SuperFunction f(c);
    Mono m{std::vector<int>(c->p(), 0), 0};
    if (z < c->p())
      m.exps[z] = 1;
    else
      m.mask = c->odd_bit(z);
    f.add_term(m, Gauss(1));
    return f;
  }
  static SuperFunction coordinate(const ChartPtr& c, const std::string& n) {
    return coordinate(c, c->require(n));
  }
  static SuperFunction generator(const ChartPtr& c, int k) {
    return constant(c, GrassmannNumber::generator(c->generators, k));
  }

  [[nodiscard]] const ChartPtr& chart() const { return chart_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  void add_term(const Mono& m, const Gauss& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SuperFunction& operator+=(const SuperFunction& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SuperFunction& operator-=(const SuperFunction& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  SuperFunction& operator*=(const Gauss& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
  friend SuperFunction operator-(SuperFunction a) { return a *= Gauss(-1); }
  friend SuperFunction operator*(SuperFunction a, const Gauss& s) { return a *= s; }
  friend SuperFunction operator*(const Gauss& s, SuperFunction a) { return a *= s; }

  friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
    SuperFunction r(a.chart_ ? a.chart_ : b.chart_);
    if (a.chart_ && b.chart_) require_same_chart(a.chart_, b.chart_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int s = merge_sign(ma.mask, mb.mask);
        if (s == 0) continue;
        Mono m{ma.exps, ma.mask | mb.mask};
        for (std::size_t k = 0; k < m.exps.size(); ++k) m.exps[k] += mb.exps[k];
        Gauss c = ca * cb;
        if (s < 0) c = -c;
        r.add_term(m, c);
      }
    return r;
  }
  SuperFunction& operator*=(const SuperFunction& o) { return *this = *this * o; }

  friend bool operator==(const SuperFunction& a, const SuperFunction& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    if (a.chart_ && b.chart_ && !(a.chart_ == b.chart_ || *a.chart_ == *b.chart_)) return false;
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const SuperFunction& a, const SuperFunction& b) { return !(a == b); }

  [[nodiscard]] SuperFunction pow(int k) const {
    if (k < 0) throw std::domain_error("negative power of a superfunction");
    SuperFunction r = constant(chart_, Gauss(1)), base = *this;
    while (k) {
      if (k & 1) r *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return r;
  }

  /// Left derivative with respect to coordinate z.
  [[nodiscard]] SuperFunction partial(std::size_t z) const {
    if (z >= chart_->dim()) throw ChartError("coordinate index out of range");
    SuperFunction r(chart_);
    if (z < chart_->p()) {
      for (const auto& [m, c] : terms_) {
        if (m.exps[z] == 0) continue;
        Mono n = m;
        n.exps[z] -= 1;
        r.add_term(n, c * Gauss(m.exps[z]));
      }
    } else {
      Mask bit = chart_->odd_bit(z);
      for (const auto& [m, c] : terms_) {
        if (!(m.mask & bit)) continue;
        Mono n = m;
        n.mask &= ~bit;
        int before = popcount(m.mask & (bit - 1));
        r.add_term(n, (before & 1) ? -c : c);
      }
    }
    return r;
  }
  [[nodiscard]] SuperFunction partial(const std::string& n) const { return partial(chart_->require(n)); }

  [[nodiscard]] SuperFunction part(int p) const {
    SuperFunction r(chart_);
    for (const auto& [m, c] : terms_)
      if (m.parity() == p) r.terms_.emplace(m, c);
    return r;
  }

  /// 0/1 when homogeneous (zero is even), -1 when mixed.
  [[nodiscard]] int parity() const {
    int p = -2;
    for (const auto& [m, c] : terms_) {
      if (p == -2)
        p = m.parity();
      else if (p != m.parity())
        return -1;
    }
    return p == -2 ? 0 : p;
  }

  [[nodiscard]] SuperFunction involution() const {
    SuperFunction r(*this);
    for (auto& [m, c] : r.terms_)
      if (m.parity()) c = -c;
    return r;
  }

  /// Maximal total degree in the even coordinates (-1 for zero).
  [[nodiscard]] int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  /// Union of Grassmann generator bits used by the coefficients.
  [[nodiscard]] Mask generator_support() const {
    Mask u = 0;
    for (const auto& [m, c] : terms_) u |= m.mask & chart_->generator_bits();
    return u;
  }

  /// True when no coordinate (even or odd) occurs.
  [[nodiscard]] bool is_constant() const {
    for (const auto& [m, c] : terms_) {
      if (m.mask & ~chart_->generator_bits()) return false;
      for (int e : m.exps)
        if (e) return false;
    }
    return true;
  }

  /// Value as a Grassmann number; requires is_constant().
  [[nodiscard]] GrassmannNumber as_constant() const {
    if (!is_constant()) throw std::domain_error("superfunction is not constant");
    GrassmannNumber g(chart_->generators);
    for (const auto& [m, c] : terms_) g.add_term(m.mask, c);
    return g;
  }

  /// Body at a point with the given even coordinate values (odd coordinates and
  /// nilpotent parts dropped).
  [[nodiscard]] Gauss body_at(const std::vector<Rational>& point) const {
    if (point.size() != chart_->p()) throw ChartError("point dimension mismatch");
    Gauss v;
    for (const auto& [m, c] : terms_) {
      if (m.mask) continue;
      Rational t(1);
      for (std::size_t k = 0; k < m.exps.size(); ++k)
        for (int r = 0; r < m.exps[k]; ++r) t *= point[k];
      v += c * Gauss(t);
    }
    return v;
  }

  /// Composition: the coordinate z of this chart is replaced by images[z]
  /// (superfunctions on target of parity chart()->parity(z)).
  [[nodiscard]] SuperFunction substitute(const ChartPtr& target,
                                         const std::vector<SuperFunction>& images) const {
    if (images.size() != chart_->dim()) throw ChartError("substitution arity mismatch");
    if (target->generators != chart_->generators)
      throw DimensionError("substitution changes the generator count");
    SuperFunction r(target);
    std::map<std::pair<std::size_t, int>, SuperFunction> powers;
    auto power = [&](std::size_t z, int e) -> const SuperFunction& {
      auto key = std::make_pair(z, e);
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, images[z].pow(e)).first;
      return it->second;
    };
    for (const auto& [m, c] : terms_) {
      GrassmannNumber g(chart_->generators);
      g.add_term(m.mask & chart_->generator_bits(), c);
      SuperFunction t = constant(target, g);
      for (std::size_t k = 0; k < chart_->p(); ++k)
        if (m.exps[k]) t *= power(k, m.exps[k]);
      for (std::size_t z = chart_->p(); z < chart_->dim(); ++z)
        if (m.mask & chart_->odd_bit(z)) t *= images[z];
      r += t;
    }
    return r;
  }

  /// (exponents, odd-coordinate subset) -> Grassmann coefficient.
  [[nodiscard]] std::map<std::pair<std::vector<int>, Mask>, GrassmannNumber> coefficient_view() const {
    std::map<std::pair<std::vector<int>, Mask>, GrassmannNumber> out;
    Mask gb = chart_->generator_bits();
    for (const auto& [m, c] : terms_) {
      auto key = std::make_pair(m.exps, m.mask & ~gb);
      auto it = out.try_emplace(key, GrassmannNumber(chart_->generators)).first;
      it->second.add_term(m.mask & gb, c);
    }
    return out;
  }

  [[nodiscard]] std::string monomial_text(const Mono& m) const {
    std::string s;
    auto push = [&](const std::string& f) {
      if (!s.empty()) s += "*";
      s += f;
    };
    Mask gb = chart_->generator_bits();
    for (Mask rest = m.mask & gb; rest; rest &= rest - 1)
      push("th" + std::to_string(std::countr_zero(rest) + 1));
    for (std::size_t k = 0; k < chart_->p(); ++k) {
      if (m.exps[k] == 1)
        push(chart_->even[k]);
      else if (m.exps[k] > 1)
        push(chart_->even[k] + "^" + std::to_string(m.exps[k]));
    }
    for (std::size_t z = chart_->p(); z < chart_->dim(); ++z)
      if (m.mask & chart_->odd_bit(z)) push(chart_->coord_name(z));
    return s;
  }

  [[nodiscard]] std::vector<Mono> display_order() const {
    std::vector<Mono> order;
    for (const auto& kv : terms_) order.push_back(kv.first);
    std::stable_sort(order.begin(), order.end(), [](const Mono& a, const Mono& b) {
      if (a.degree() != b.degree()) return a.degree() > b.degree();
      if (a.exps != b.exps) return a.exps > b.exps;
      return detail::subset_less(a.mask, b.mask);
    });
    return order;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (const auto& m : display_order()) detail::append_term(out, terms_.at(m), monomial_text(m));
    return out.empty() ? "0" : out;
  }

  /// Number of terms.
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

 private:
  void adopt(const SuperFunction& o) {
    if (!chart_) {
      chart_ = o.chart_;
      return;
    }
    if (o.chart_) require_same_chart(chart_, o.chart_);
  }

  ChartPtr chart_;
  Terms terms_;
};

inline std::string wrap_sum(const std::string& s) {
  bool compound = s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
  return compound ? "(" + s + ")" : s;
}

/// C-valued function f0*c0 + f1*c1.
struct CFunction {
  SuperFunction f0;
  SuperFunction f1;

  CFunction() = default;
  CFunction(SuperFunction a, SuperFunction b) : f0(std::move(a)), f1(std::move(b)) {}
  static CFunction zero(const ChartPtr& c) { return {SuperFunction(c), SuperFunction(c)}; }

  [[nodiscard]] const ChartPtr& chart() const { return f0.chart() ? f0.chart() : f1.chart(); }
  [[nodiscard]] const SuperFunction& component(int alpha) const { return alpha ? f1 : f0; }
  [[nodiscard]] bool is_zero() const { return f0.is_zero() && f1.is_zero(); }

  /// Homogeneous part of parity beta: (f0)_beta c0 + (f1)_{1+beta} c1.
  [[nodiscard]] CFunction part(int beta) const { return {f0.part(beta), f1.part(1 - beta)}; }

  /// f^alpha_beta: the part of f^alpha of parity alpha+beta.
  [[nodiscard]] SuperFunction piece(int alpha, int beta) const {
    return component(alpha).part((alpha + beta) & 1);
  }

  /// 0/1 when homogeneous, -1 when mixed.
  [[nodiscard]] int parity() const {
    bool e = !part(0).is_zero(), o = !part(1).is_zero();
    if (e && o) return -1;
    return o ? 1 : 0;
  }

  CFunction& operator+=(const CFunction& o) {
    f0 += o.f0;
    f1 += o.f1;
    return *this;
  }
  CFunction& operator-=(const CFunction& o) {
    f0 -= o.f0;
    f1 -= o.f1;
    return *this;
  }
  friend CFunction operator+(CFunction a, const CFunction& b) { return a += b; }
  friend CFunction operator-(CFunction a, const CFunction& b) { return a -= b; }
  friend CFunction operator-(CFunction a) { return {-a.f0, -a.f1}; }
  friend CFunction operator*(const Gauss& s, const CFunction& a) { return {s * a.f0, s * a.f1}; }
  friend CFunction operator*(const SuperFunction& g, const CFunction& a) {
    return {g * a.f0, g * a.f1};
  }
  friend bool operator==(const CFunction& a, const CFunction& b) {
    return a.f0 == b.f0 && a.f1 == b.f1;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    if (!f0.is_zero()) out = wrap_sum(f0.to_string()) + "*c0";
    if (!f1.is_zero()) out += (out.empty() ? "" : " + ") + wrap_sum(f1.to_string()) + "*c1";
    return out.empty() ? "0" : out;
  }
};

/// Vector field sum_z X^z d/dz with components on the left.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(ChartPtr c) : chart_(c), comps_(c->dim(), SuperFunction(c)) {}
  VectorField(ChartPtr c, std::vector<SuperFunction> comps) : chart_(std::move(c)), comps_(std::move(comps)) {
    if (comps_.size() != chart_->dim()) throw ChartError("vector field arity mismatch");
  }

  static VectorField coordinate(const ChartPtr& c, std::size_t z) {
    VectorField v(c);
    v.comps_[z] = SuperFunction::constant(c, Gauss(1));
    return v;
  }
  static VectorField coordinate(const ChartPtr& c, const std::string& n) {
    return coordinate(c, c->require(n));
  }

  [[nodiscard]] const ChartPtr& chart() const { return chart_; }
  [[nodiscard]] const SuperFunction& operator[](std::size_t z) const { return comps_.at(z); }
  [[nodiscard]] SuperFunction& operator[](std::size_t z) { return comps_.at(z); }
  [[nodiscard]] const std::vector<SuperFunction>& components() const { return comps_; }
  [[nodiscard]] bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const auto& f) { return f.is_zero(); });
  }

  [[nodiscard]] SuperFunction apply(const SuperFunction& f) const {
    require_same_chart(chart_, f.chart());
    SuperFunction r(chart_);
    for (std::size_t z = 0; z < comps_.size(); ++z)
      if (!comps_[z].is_zero()) r += comps_[z] * f.partial(z);
    return r;
  }
  [[nodiscard]] CFunction apply(const CFunction& f) const { return {apply(f.f0), apply(f.f1)}; }

  /// Homogeneous part of parity p: components of parity p + eps(z).
  [[nodiscard]] VectorField part(int p) const {
    VectorField v(chart_);
    for (std::size_t z = 0; z < comps_.size(); ++z) v.comps_[z] = comps_[z].part((p + chart_->parity(z)) & 1);
    return v;
  }

  [[nodiscard]] int parity() const {
    bool e = !part(0).is_zero(), o = !part(1).is_zero();
    if (e && o) return -1;
    return o ? 1 : 0;
  }

  VectorField& operator+=(const VectorField& o) {
    require_same_chart(chart_, o.chart_);
    for (std::size_t z = 0; z < comps_.size(); ++z) comps_[z] += o.comps_[z];
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    require_same_chart(chart_, o.chart_);
    for (std::size_t z = 0; z < comps_.size(); ++z) comps_[z] -= o.comps_[z];
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator-(VectorField a) {
    for (auto& c : a.comps_) c = -c;
    return a;
  }
  friend VectorField operator*(const SuperFunction& g, VectorField a) {
    for (auto& c : a.comps_) c = g * c;
    return a;
  }
  friend VectorField operator*(const Gauss& s, VectorField a) {
    for (auto& c : a.comps_) c *= s;
    return a;
  }
  friend bool operator==(const VectorField& a, const VectorField& b) {
    if (a.comps_.size() != b.comps_.size()) return false;
    for (std::size_t z = 0; z < a.comps_.size(); ++z)
      if (a.comps_[z] != b.comps_[z]) return false;
    return true;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (std::size_t z = 0; z < comps_.size(); ++z) {
      const auto& c = comps_[z];
      if (c.is_zero()) continue;
      std::string op = "d/d" + chart_->coord_name(z);
      if (c.size() == 1) {
        const auto& [m, v] = *c.terms().begin();
        std::string mono = c.monomial_text(m);
        detail::append_term(out, v, mono.empty() ? op : mono + "*" + op);
      } else {
        out += (out.empty() ? "" : " + ") + std::string("(") + c.to_string() + ")*" + op;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  ChartPtr chart_;
  std::vector<SuperFunction> comps_;
};

/// Graded commutator, extended bilinearly over homogeneous parts.
inline VectorField commutator(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart());
  VectorField r(x.chart());
  for (int a = 0; a < 2; ++a) {
    VectorField xa = x.part(a);
    if (xa.is_zero()) continue;
    for (int b = 0; b < 2; ++b) {
      VectorField yb = y.part(b);
      if (yb.is_zero()) continue;
      for (std::size_t z = 0; z < x.chart()->dim(); ++z) {
        SuperFunction t = xa.apply(yb[z]);
        SuperFunction u = yb.apply(xa[z]);
        r[z] += (a & b) ? t + u : t - u;
      }
    }
  }
  return r;
}

}  // namespace ssp
