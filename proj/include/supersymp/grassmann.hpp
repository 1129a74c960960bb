#pragma once

#include "supersymp/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssp {

using Mask = std::uint64_t;

inline constexpr int kDefaultGenerators = 6;
inline constexpr int kMaxOddSlots = 64;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotInvertible : std::domain_error {
  using std::domain_error::domain_error;
};

/// Generator count from SUPERSYMP_GENERATORS, falling back to 6.
inline int configured_generators() {
  if (const char* env = std::getenv("SUPERSYMP_GENERATORS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0 && v <= 32) return static_cast<int>(v);
    throw std::invalid_argument("SUPERSYMP_GENERATORS must be an integer in [0,32]");
  }
  return kDefaultGenerators;
}

inline int popcount(Mask m) { return std::popcount(m); }

/// Sign of the product of the ordered odd monomials a and b when rewritten in
/// increasing order; 0 when they share a factor.
inline int merge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int bit = std::countr_zero(rest);
    Mask above = (bit == 63) ? Mask{0} : ~((Mask{1} << (bit + 1)) - 1);
    swaps += popcount(a & above);
  }
  return (swaps & 1) ? -1 : 1;
}

/// Element of the Grassmann algebra on generator_count generators over Q(i).
class GrassmannNumber {
 public:
  using Terms = std::map<Mask, Gauss>;

  GrassmannNumber() : n_(configured_generators()) {}
  explicit GrassmannNumber(int generator_count) : n_(check_count(generator_count)) {}
  GrassmannNumber(int generator_count, const Gauss& scalar) : n_(check_count(generator_count)) {
    if (!scalar.is_zero()) terms_[0] = scalar;
  }

  /// th_k, 1-based.
  static GrassmannNumber generator(int generator_count, int k) {
    if (k < 1 || k > generator_count) throw DimensionError("generator index out of range");
    GrassmannNumber g(generator_count);
    g.terms_[Mask{1} << (k - 1)] = Gauss(1);
    return g;
  }

  [[nodiscard]] int generator_count() const { return n_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] Gauss coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Gauss() : it->second;
  }

  void add_term(Mask m, const Gauss& c) {
    if (m >> n_) throw DimensionError("monomial outside generator range");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] Gauss body() const { return coefficient(0); }
  [[nodiscard]] bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  /// Part of parity p (0 or 1).
  [[nodiscard]] GrassmannNumber part(int p) const {
    GrassmannNumber r(n_);
    for (const auto& [m, c] : terms_)
      if ((popcount(m) & 1) == p) r.terms_.emplace(m, c);
    return r;
  }

  /// 0 or 1 for homogeneous elements (zero counts as even), -1 if mixed.
  [[nodiscard]] int parity() const {
    int p = -2;
    for (const auto& [m, c] : terms_) {
      int q = popcount(m) & 1;
      if (p == -2)
        p = q;
      else if (p != q)
        return -1;
    }
    return p == -2 ? 0 : p;
  }

  [[nodiscard]] GrassmannNumber involution() const {
    GrassmannNumber r(*this);
    for (auto& [m, c] : r.terms_)
      if (popcount(m) & 1) c = -c;
    return r;
  }

  GrassmannNumber& operator+=(const GrassmannNumber& o) {
    same_size(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GrassmannNumber& operator-=(const GrassmannNumber& o) {
    same_size(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GrassmannNumber& operator*=(const Gauss& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend GrassmannNumber operator+(GrassmannNumber a, const GrassmannNumber& b) { return a += b; }
  friend GrassmannNumber operator-(GrassmannNumber a, const GrassmannNumber& b) { return a -= b; }
  friend GrassmannNumber operator-(GrassmannNumber a) { return a *= Gauss(-1); }
  friend GrassmannNumber operator*(GrassmannNumber a, const Gauss& s) { return a *= s; }
  friend GrassmannNumber operator*(const Gauss& s, GrassmannNumber a) { return a *= s; }

  friend GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b) {
    a.same_size(b);
    GrassmannNumber r(a.n_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int s = merge_sign(ma, mb);
        if (s == 0) continue;
        Gauss c = ca * cb;
        if (s < 0) c = -c;
        r.add_term(ma | mb, c);
      }
    return r;
  }
  GrassmannNumber& operator*=(const GrassmannNumber& o) { return *this = *this * o; }

  friend bool operator==(const GrassmannNumber& a, const GrassmannNumber& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const GrassmannNumber& a, const GrassmannNumber& b) { return !(a == b); }

  /// Inverse via the finite geometric series in the nilpotent part.
  [[nodiscard]] GrassmannNumber inverse() const {
    Gauss b = body();
    if (b.is_zero()) throw NotInvertible("Grassmann element with zero body is not invertible");
    GrassmannNumber binv(n_, Gauss(1) / b);
    GrassmannNumber nil = *this * (Gauss(1) / b);  // 1 + n with n nilpotent
    nil.terms_.erase(0);
    GrassmannNumber sum(n_, Gauss(1)), power(n_, Gauss(1));
    for (int k = 1; k <= n_; ++k) {
      power = power * nil;
      if (power.is_zero()) break;
      if (k & 1)
        sum -= power;
      else
        sum += power;
    }
    return sum * binv;
  }

  [[nodiscard]] std::string to_string() const;

 private:
  static int check_count(int n) {
    if (n < 0 || n > kMaxOddSlots) throw DimensionError("generator count out of range");
    return n;
  }
  void same_size(const GrassmannNumber& o) const {
    if (o.n_ != n_) throw DimensionError("mismatched generator_count");
  }

  int n_;
  Terms terms_;
};

namespace detail {

/// Appends " + coeff*name" style text for one term; factors is the monomial text.
inline void append_term(std::string& out, const Gauss& c, const std::string& factors) {
  bool negative = (sgn(c.re) < 0 && sgn(c.im) == 0) || (sgn(c.re) == 0 && sgn(c.im) < 0);
  Gauss a = negative ? -c : c;
  std::string body;
  if (factors.empty()) {
    body = to_string(a);
  } else if (a == Gauss(1)) {
    body = factors;
  } else {
    std::string cs = to_string(a);
    body = (needs_parens(a) ? "(" + cs + ")" : cs) + "*" + factors;
  }
  if (out.empty())
    out = negative ? "-" + body : body;
  else
    out += negative ? " - " + body : " + " + body;
}

/// Lexicographic order on index sequences; a proper prefix comes first.
inline bool subset_less(Mask a, Mask b) {
  while (a && b) {
    int ia = std::countr_zero(a), ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

inline std::string generator_factors(Mask m) {
  std::string s;
  for (Mask rest = m; rest; rest &= rest - 1) {
    if (!s.empty()) s += "*";
    s += "th" + std::to_string(std::countr_zero(rest) + 1);
  }
  return s;
}

}  // namespace detail

inline std::string GrassmannNumber::to_string() const {
  std::vector<Mask> order;
  for (const auto& kv : terms_) order.push_back(kv.first);
  std::sort(order.begin(), order.end(), detail::subset_less);
  std::string out;
  for (Mask m : order) detail::append_term(out, terms_.at(m), detail::generator_factors(m));
  return out.empty() ? "0" : out;
}

}  // namespace ssp
