#include "support.hpp"
#include "supersymp/liecoh.hpp"

#include <gtest/gtest.h>

using namespace ssp;
using namespace ssp::testing;

namespace {

// c(u, w, ...) with u given in coordinates.
Rational eval_linear(const CECochain& c, const std::vector<Rational>& u, std::vector<int> rest) {
  Rational s(0);
  rest.insert(rest.begin(), 0);
  for (std::size_t m = 0; m < u.size(); ++m) {
    if (is_zero(u[m])) continue;
    rest[0] = static_cast<int>(m);
    s += u[m] * c.eval(rest);
  }
  return s;
}

CECochain random_cochain(Rng& rng, const std::vector<int>& parity, int k) {
  CECochain c(k, parity);
  for (const auto& idx : cochain_basis(parity, k))
    if (uniform(rng, 0, 2)) c.set(idx, small_rational(rng));
  return c;
}

SuperLieAlgebra abelian(std::vector<int> parity) { return SuperLieAlgebra(std::move(parity)); }

SuperLieAlgebra heisenberg_like() {
  // [e1,e2] = e4, [e3,e3] = e4 with e3 odd and e4 even central.
  SuperLieAlgebra g({0, 0, 1, 0});
  g.set_bracket(0, 1, {0, 0, 0, 1});
  g.set_bracket(2, 2, {0, 0, 0, 1});
  return g;
}

Matrix<Rational> random_even_basis_change(Rng& rng, const std::vector<int>& parity) {
  const std::size_t n = parity.size();
  for (;;) {
    auto t = zeros<Rational>(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (parity[a] == parity[b]) t[a][b] = Rational(uniform(rng, -2, 2));
    if (rank(t) == n) return t;
  }
}

std::vector<SuperLieAlgebra> sample_algebras() {
  Rng rng(61);
  std::vector<SuperLieAlgebra> out{gl_superalgebra(1, 1), sl_superalgebra(2, 1), heisenberg_like(),
                                   direct_sum(gl_superalgebra(1, 1), abelian({0, 1}))};
  out.push_back(change_basis(gl_superalgebra(1, 1), random_even_basis_change(rng, out[0].parity)));
  return out;
}

}  // namespace

TEST(LieCohomology, SampleAlgebrasAreValid) {
  for (const auto& g : sample_algebras()) {
    EXPECT_NO_THROW(g.validate());
    EXPECT_TRUE(jacobi_check(g).ok);
  }
  EXPECT_EQ(gl_superalgebra(1, 1).dim(), 4u);
  EXPECT_EQ(sl_superalgebra(2, 1).dim(), 8u);
  EXPECT_EQ(gl_superalgebra(1, 1).parity, (std::vector<int>{0, 1, 1, 0}));
}

TEST(LieCohomology, ValidationRejectsBadBrackets) {
  SuperLieAlgebra g({0, 1});
  g.c[0][1] = {1, 0};
  EXPECT_THROW(g.validate(), AlgebraError);
  SuperLieAlgebra h({0, 0});
  h.c[0][1] = {1, 0};
  EXPECT_THROW(h.validate(), AlgebraError);
}

TEST(LieCohomology, JacobiDetectsFailure) {
  SuperLieAlgebra g({0, 0, 0});
  g.set_bracket(0, 1, {0, 0, 1});
  g.set_bracket(1, 2, {1, 0, 0});
  g.set_bracket(0, 2, {0, 0, 1});
  EXPECT_FALSE(jacobi_check(g).ok);
}

TEST(LieCohomology, CochainGradedSkewSymmetry) {
  CECochain c(2, {0, 1, 1});
  c.set({1, 0}, Rational(3));
  EXPECT_EQ(c.eval({0, 1}), Rational(-3));
  c.set({2, 1}, Rational(5));
  EXPECT_EQ(c.eval({1, 2}), Rational(5));
  c.set({2, 2}, Rational(7));
  EXPECT_EQ(c.eval({2, 2}), Rational(7));
  EXPECT_THROW(c.set({0, 0}, Rational(1)), AlgebraError);
  EXPECT_EQ(c.component({0, 1}), 1);
  EXPECT_EQ(c.eval_pair({1, 2}), std::make_pair(Rational(5), Rational(0)));
}

TEST(LieCohomology, CoboundaryOfOneCochains) {
  // dc(v0, v1) = c([v0, v1]).
  Rng rng(62);
  for (const auto& g : sample_algebras()) {
    const auto c = random_cochain(rng, g.parity, 1);
    const auto dc = ce_coboundary(c, g);
    for (int a = 0; a < static_cast<int>(g.dim()); ++a)
      for (int b = 0; b < static_cast<int>(g.dim()); ++b)
        EXPECT_EQ(dc.eval({a, b}), eval_linear(c, g.c[a][b], {}));
  }
}

TEST(LieCohomology, CoboundaryOfTwoCochains) {
  // dc(v0,v1,v2) = -c([v0,v1],v2) + (-1)^{e1 e2} c([v0,v2],v1) + c(v0,[v1,v2]).
  Rng rng(63);
  for (const auto& g : sample_algebras()) {
    const auto c = random_cochain(rng, g.parity, 2);
    const auto dc = ce_coboundary(c, g);
    const int n = static_cast<int>(g.dim());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e) {
          const int e1 = g.parity[b], e2 = g.parity[e];
          Rational expected = -eval_linear(c, g.c[a][b], {e});
          expected += ((e1 * e2) ? -1 : 1) * eval_linear(c, g.c[a][e], {b});
          Rational last(0);
          for (std::size_t m = 0; m < g.dim(); ++m)
            if (!is_zero(g.c[b][e][m])) last += g.c[b][e][m] * c.eval({a, static_cast<int>(m)});
          expected += last;
          EXPECT_EQ(dc.eval({a, b, e}), expected);
        }
  }
}

TEST(LieCohomology, CoboundaryMatrixAgreesWithCoboundary) {
  Rng rng(64);
  for (const auto& g : sample_algebras())
    for (int k = 1; k <= 2; ++k) {
      const auto c = random_cochain(rng, g.parity, k);
      const auto m = coboundary_matrix(g, k);
      const auto v = multiply(m, to_vector(c, cochain_basis(g.parity, k)));
      EXPECT_EQ(v, to_vector(ce_coboundary(c, g), cochain_basis(g.parity, k + 1)));
    }
}

TEST(LieCohomology, DSquaredVanishes) {
  Rng rng(65);
  for (const auto& g : sample_algebras())
    for (int k = 1; k <= 2; ++k)
      for (int trial = 0; trial < 3; ++trial) {
        const auto c = random_cochain(rng, g.parity, k);
        EXPECT_TRUE(ce_coboundary(ce_coboundary(c, g), g).is_zero());
      }
}

TEST(LieCohomology, ExtensionIsLieIffCocycle) {
  Rng rng(66);
  int closed = 0, open = 0;
  for (const auto& g : sample_algebras()) {
    const auto h = h2(g);
    for (int trial = 0; trial < 6; ++trial) {
      CECochain w = random_cochain(rng, g.parity, 2);
      if (trial % 2 == 0) {
        w = ce_coboundary(random_cochain(rng, g.parity, 1), g);
        for (const auto& r : h.representatives)
          if (uniform(rng, 0, 1)) w = w + r;
      }
      const bool cocycle = ce_coboundary(w, g).is_zero();
      (cocycle ? closed : open) += 1;
      const auto e = central_extension(g, w);
      EXPECT_NO_THROW(e.validate());
      EXPECT_EQ(jacobi_check(e).ok, cocycle);
    }
  }
  EXPECT_GT(closed, 5);
  EXPECT_GT(open, 5);
}

TEST(LieCohomology, AbelianSecondCohomology) {
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) {
      std::vector<int> par(static_cast<std::size_t>(p), 0);
      par.insert(par.end(), static_cast<std::size_t>(q), 1);
      const auto r = h2(abelian(par));
      EXPECT_EQ(r.dim_b2, 0u);
      EXPECT_EQ(r.dim_h2, static_cast<std::size_t>(p * (p - 1) / 2 + p * q + q * (q + 1) / 2));
    }
}

TEST(LieCohomology, SecondCohomologyOfHeisenbergLike) {
  // Z2: 2-cocycles; B2 spanned by d(e4*) which hits e1^e2 and e3^e3.
  const auto g = heisenberg_like();
  const auto r = h2(g);
  EXPECT_EQ(r.dim_b2, 1u);
  EXPECT_EQ(r.dim_h2, r.dim_z2 - r.dim_b2);
  for (const auto& rep : r.representatives) EXPECT_TRUE(ce_coboundary(rep, g).is_zero());
}

TEST(LieCohomology, SecondCohomologyIsBasisIndependent) {
  Rng rng(67);
  const auto g = direct_sum(gl_superalgebra(1, 1), abelian({0, 1}));
  const auto base = h2(g);
  for (int trial = 0; trial < 3; ++trial) {
    const auto h = change_basis(g, random_even_basis_change(rng, g.parity));
    EXPECT_TRUE(jacobi_check(h).ok);
    const auto r = h2(h);
    EXPECT_EQ(r.dim_h2, base.dim_h2);
    EXPECT_EQ(r.dim_b2, base.dim_b2);
  }
}

TEST(LieCohomology, ExtensionEquivalence) {
  Rng rng(68);
  for (const auto& g : sample_algebras()) {
    const auto h = h2(g);
    const auto w1 = h.representatives.empty() ? CECochain(2, g.parity) : h.representatives.front();
    const auto f = random_cochain(rng, g.parity, 1);
    const auto w2 = w1 + ce_coboundary(f, g);
    const auto found = extension_equivalent(w1, w2, g);
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(ce_coboundary(*found, g), w1 - w2);
    if (!h.representatives.empty()) EXPECT_FALSE(extension_equivalent(w1, CECochain(2, g.parity), g).has_value());
  }
}

TEST(LieCohomology, PullbackClass) {
  Rng rng(69);
  for (const auto& g : sample_algebras()) {
    std::vector<Rational> mu(g.dim()), mu2(g.dim());
    for (auto& m : mu) m = small_rational(rng);
    for (auto& m : mu2) m = small_rational(rng);
    const auto w = pullback_class(g, mu);
    for (int a = 0; a < static_cast<int>(g.dim()); ++a)
      for (int b = 0; b < static_cast<int>(g.dim()); ++b) {
        Rational pairing(0);
        for (std::size_t k = 0; k < g.dim(); ++k) pairing += g.c[a][b][k] * mu[k];
        EXPECT_EQ(w.eval({a, b}), pairing);
      }
    EXPECT_TRUE(ce_coboundary(w, g).is_zero());
    EXPECT_EQ(ce_coboundary(class_difference(g, mu, mu2), g), w - pullback_class(g, mu2));
  }
}

TEST(LieCohomology, MatrixSuperalgebraBrackets) {
  // In gl(1|1): [E12, E21] = E11 + E22 for odd E12, E21.
  const auto g = gl_superalgebra(1, 1);
  EXPECT_EQ(g.c[1][2], (std::vector<Rational>{1, 0, 0, 1}));
  EXPECT_EQ(g.c[0][1], (std::vector<Rational>{0, 1, 0, 0}));
  EXPECT_EQ(g.c[0][3], (std::vector<Rational>{0, 0, 0, 0}));
}
