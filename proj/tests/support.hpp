#pragma once

#include "supersymp/forms.hpp"

#include <random>

namespace ssp::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational small_rational(Rng& rng, long range = 3) {
  return make_rational(uniform(rng, -range, range), uniform(rng, 1, 2));
}

inline Gauss small_gauss(Rng& rng, bool complex = false) {
  return complex ? Gauss(small_rational(rng), small_rational(rng)) : Gauss(small_rational(rng));
}

/// Random element of the Grassmann algebra; parity -1 for mixed.
inline GrassmannNumber random_grassmann(Rng& rng, int n, int parity = -1, int terms = 4) {
  GrassmannNumber g(n);
  for (int t = 0; t < terms; ++t) {
    Mask m = n ? static_cast<Mask>(uniform(rng, 0, (1L << n) - 1)) : 0;
    if (parity >= 0 && (popcount(m) & 1) != parity) continue;
    g.add_term(m, small_gauss(rng, true));
  }
  return g;
}

/// Random polynomial of total even degree <= deg, parity -1 for mixed.
inline SuperFunction random_function(Rng& rng, const ChartPtr& c, int deg, int parity = -1, int terms = 3,
                                     bool use_generators = false) {
  SuperFunction f(c);
  const int nbits = static_cast<int>(c->q()) + (use_generators ? c->generators : 0);
  for (int t = 0, tries = 0; t < terms && tries < 8 * terms; ++tries) {
    Mono m;
    m.exps.assign(c->p(), 0);
    int budget = static_cast<int>(uniform(rng, 0, deg));
    while (budget-- > 0 && c->p() > 0) ++m.exps[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(c->p()) - 1))];
    for (int b = 0; b < nbits; ++b)
      if (uniform(rng, 0, 2) == 0) {
        if (b < static_cast<int>(c->q()))
          m.mask |= c->odd_bit(c->p() + static_cast<std::size_t>(b));
        else
          m.mask |= Mask{1} << (b - static_cast<int>(c->q()));
      }
    if (parity >= 0 && m.parity() != parity) continue;
    f.add_term(m, Gauss(small_rational(rng)));
    ++t;
  }
  return f;
}

/// Homogeneous vector field of the given parity.
inline VectorField random_field(Rng& rng, const ChartPtr& c, int deg, int parity) {
  VectorField v(c);
  for (std::size_t z = 0; z < c->dim(); ++z)
    if (uniform(rng, 0, 3)) v[z] = random_function(rng, c, deg, (parity + c->parity(z)) & 1, 2);
  return v;
}

/// Homogeneous k-form of the given parity.
inline KForm random_form(Rng& rng, const ChartPtr& c, int k, int deg, int parity, int terms = 3) {
  KForm w(c, k);
  for (int t = 0; t < terms; ++t) {
    Word word;
    for (int i = 0; i < k; ++i) word.push_back(static_cast<int>(uniform(rng, 0, static_cast<long>(c->dim()) - 1)));
    const int odd = odd_count(*c, word) & 1;
    w.add_term(word, random_function(rng, c, deg, (parity + odd) & 1, 2));
  }
  return w;
}

inline ChartPtr random_chart(Rng& rng, int max_p, int max_q, int generators = 0) {
  std::vector<std::string> even, odd;
  const long p = uniform(rng, 1, max_p), q = uniform(rng, 1, max_q);
  for (long i = 0; i < p; ++i) even.push_back("x" + std::to_string(i + 1));
  for (long i = 0; i < q; ++i) odd.push_back("xi" + std::to_string(i + 1));
  return make_chart("R", even, odd, generators);
}

inline Gauss sign(int e) { return (e & 1) ? Gauss(-1) : Gauss(1); }

}  // namespace ssp::testing
