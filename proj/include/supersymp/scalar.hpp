#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace ssp {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q" or "p".
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "p", "-p", "p/q"; throws std::invalid_argument on malformed text.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Element of Q(i).
struct Gauss {
  Rational re{0};
  Rational im{0};

  Gauss() = default;
  Gauss(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  Gauss(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Gauss imag_unit() { return Gauss(Rational(0), Rational(1)); }

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  [[nodiscard]] bool is_real() const { return sgn(im) == 0; }
  [[nodiscard]] Gauss conj() const { return {re, -im}; }

  Gauss& operator+=(const Gauss& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gauss& operator-=(const Gauss& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gauss& operator*=(const Gauss& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Gauss& operator/=(const Gauss& o) {
    Rational n = o.re * o.re + o.im * o.im;
    if (sgn(n) == 0) throw std::domain_error("division by zero");
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
  }
  friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
  friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
  friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
  friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
  friend Gauss operator-(Gauss a) {
    a.re = -a.re;
    a.im = -a.im;
    return a;
  }
  friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }
};

inline bool is_zero(const Gauss& g) { return g.is_zero(); }

/// True when the rendered form needs parentheses as a factor.
inline bool needs_parens(const Gauss& g) { return sgn(g.re) != 0 && sgn(g.im) != 0; }

/// "3/2", "-i", "2/3*i", "1+2*i".
inline std::string to_string(const Gauss& g) {
  if (g.is_real()) return to_string(g.re);
  std::string imag;
  if (g.im == 1)
    imag = "i";
  else if (g.im == -1)
    imag = "-i";
  else
    imag = to_string(g.im) + "*i";
  if (sgn(g.re) == 0) return imag;
  std::string s = to_string(g.re);
  if (imag[0] == '-') return s + imag;
  return s + "+" + imag;
}

inline int sign_of_power(int exponent) { return (exponent & 1) ? -1 : 1; }

}  // namespace ssp
