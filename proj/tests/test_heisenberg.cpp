#include "support.hpp"
#include "supersymp/dsl.hpp"
#include "supersymp/heisenberg.hpp"

#include <gtest/gtest.h>

using namespace ssp;
using namespace ssp::testing;

namespace {

HeisenbergSpec random_spec(Rng& rng, int max_p, int max_q) {
  const auto p = static_cast<std::size_t>(uniform(rng, 0, max_p)), q = static_cast<std::size_t>(uniform(rng, 1, max_q));
  std::vector<int> par(p, 0);
  par.insert(par.end(), q, 1);
  const std::size_t n = p + q;
  auto m = zeros<Rational>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (i == j && !par[i]) continue;
      if (uniform(rng, 0, 2) == 0) continue;
      m[i][j] = Rational(uniform(rng, -2, 2));
      m[j][i] = (par[i] & par[j]) ? m[i][j] : Rational(-m[i][j]);
    }
  return HeisenbergSpec::from_matrix(par, m);
}

GroupElement random_element(Rng& rng, const HeisenbergSpec& s, int gens) {
  GroupElement g = GroupElement::identity(s, gens);
  for (std::size_t i = 0; i < s.n(); ++i) {
    g.a[i] = random_grassmann(rng, gens, s.parity[i], 3);
    if (!s.parity[i]) g.a[i].add_term(0, Gauss(small_rational(rng)));
  }
  g.b0 = random_grassmann(rng, gens, 0, 3);
  g.b1 = random_grassmann(rng, gens, 1, 3);
  return g;
}

}  // namespace

TEST(Heisenberg, ExampleSpec) {
  const auto s = heisenberg_3_3_example();
  EXPECT_EQ(s.n(), 6u);
  const auto g = algebra_of(s);
  EXPECT_TRUE(jacobi_check(g).ok);
  auto bracket = [&](std::size_t i, std::size_t j) { return g.c[i][j]; };
  auto central = [](long c0, long c1) {
    std::vector<Rational> v(8, Rational(0));
    v[6] = c0;
    v[7] = c1;
    return v;
  };
  EXPECT_EQ(bracket(1, 0), central(1, 0));
  EXPECT_EQ(bracket(3, 0), central(0, 1));
  EXPECT_EQ(bracket(4, 2), central(0, 1));
  EXPECT_EQ(bracket(4, 4), central(1, 0));
  EXPECT_EQ(bracket(5, 5), central(-1, 0));
  EXPECT_EQ(bracket(0, 2), central(0, 0));
}

TEST(Heisenberg, SpecValidation) {
  auto m = zeros<Rational>(2, 2);
  m[0][1] = 1;
  EXPECT_THROW(HeisenbergSpec::from_matrix({0, 0}, m), AlgebraError);
  m[1][0] = -1;
  EXPECT_NO_THROW(HeisenbergSpec::from_matrix({0, 0}, m));
  auto odd = zeros<Rational>(2, 2);
  odd[0][0] = 1;
  EXPECT_THROW(HeisenbergSpec::from_matrix({0, 1}, odd), AlgebraError);
  EXPECT_NO_THROW(HeisenbergSpec::from_matrix({1, 1}, odd));
}

TEST(Heisenberg, GroupLaws) {
  Rng rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_spec(rng, 3, 3);
    const auto g = random_element(rng, s, 4), h = random_element(rng, s, 4), k = random_element(rng, s, 4);
    const auto e = GroupElement::identity(s, 4);
    EXPECT_EQ(group_mul(s, group_mul(s, g, h), k), group_mul(s, g, group_mul(s, h, k)));
    EXPECT_EQ(group_mul(s, g, e), g);
    EXPECT_EQ(group_mul(s, e, g), g);
    EXPECT_EQ(group_mul(s, g, group_inverse(g)), e);
    EXPECT_EQ(group_mul(s, group_inverse(g), g), e);
  }
}

TEST(Heisenberg, GroupCommutatorIsCentral) {
  Rng rng(72);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_spec(rng, 3, 3);
    const auto g = random_element(rng, s, 4), h = random_element(rng, s, 4);
    const auto gh = group_mul(s, g, h), hg = group_mul(s, h, g);
    const auto comm = group_mul(s, gh, group_inverse(hg));
    for (const auto& x : comm.a) EXPECT_TRUE(x.is_zero());
    // Omega(a, a') - Omega(a', a) summed by hand.
    GrassmannNumber expect0(4), expect1(4);
    for (std::size_t i = 0; i < s.n(); ++i)
      for (std::size_t j = 0; j < s.n(); ++j) {
        const int sg = (s.parity[i] & s.parity[j]) ? -1 : 1;
        expect0 += Gauss(sg * s.omega0[i][j]) * (g.a[i] * h.a[j] - h.a[i] * g.a[j]) * Gauss(make_rational(1, 2));
        expect1 += Gauss(sg * s.omega1[i][j]) * (g.a[i] * h.a[j] - h.a[i] * g.a[j]) * Gauss(make_rational(1, 2));
      }
    EXPECT_EQ(comm.b0, expect0);
    EXPECT_EQ(comm.b1, expect1);
  }
}

TEST(Heisenberg, WrongParityCoordinatesRejected) {
  const auto s = heisenberg_3_3_example();
  auto g = GroupElement::identity(s, 2);
  g.a[0] = GrassmannNumber::generator(2, 1);
  EXPECT_THROW(group_mul(s, g, g), AlgebraError);
}

TEST(Heisenberg, CoadjointActionIsAnAction) {
  Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_spec(rng, 3, 3);
    const auto g = random_element(rng, s, 4), h = random_element(rng, s, 4);
    const auto mu = OrbitPoint::at(s, small_rational(rng), small_rational(rng), 4);
    EXPECT_EQ(coad(s, group_mul(s, g, h), mu), coad(s, g, coad(s, h, mu)));
    EXPECT_EQ(coad(s, GroupElement::identity(s, 4), mu), mu);
  }
}

TEST(Heisenberg, OrbitTypes) {
  EXPECT_EQ(orbit_type(Rational(0), Rational(0)), OrbitType::Trivial);
  EXPECT_EQ(orbit_type(Rational(1), Rational(0)), OrbitType::CaseI);
  EXPECT_EQ(orbit_type(Rational(0), Rational(2)), OrbitType::CaseII);
  EXPECT_EQ(orbit_type(Rational(-1), Rational(1)), OrbitType::CaseIII);
  EXPECT_STREQ(to_string(OrbitType::CaseIII), "case_iii");
}

TEST(Heisenberg, ExampleOrbitForms) {
  const auto s = heisenberg_3_3_example();
  const std::vector<std::tuple<int, int, std::string>> cases{
      {1, 0, "dx1^dx2 + 1/2*dxi5^dxi5 - 1/2*dxi6^dxi6"},
      {0, 1, "dxib1^dxb4 + dxib3^dxb5"},
      {1, 1, "dx1^dxh2 + dxib1^dxh2 + dxb5^dxih5 + 1/2*dxih5^dxih5 - 1/2*dxi6^dxi6"},
  };
  for (const auto& [y0, yb, text] : cases) {
    const auto o = orbit_chart(s, Rational(y0), Rational(yb));
    EXPECT_EQ(kks_form(o), parse_form(Document{}, o.chart, text));
  }
  EXPECT_THROW(kks_form(orbit_chart(s, Rational(0), Rational(0))), NotSymplectic);
}

TEST(Heisenberg, KksPairsFundamentalFields) {
  Rng rng(74);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_spec(rng, 3, 3);
    const Rational y0(uniform(rng, -2, 2)), yb(uniform(rng, -2, 2));
    const auto o = orbit_chart(s, y0, yb);
    if (o.type == OrbitType::Trivial || o.dim() == 0) continue;
    const KForm w = kks_form(o);
    for (std::size_t v = 0; v < s.n(); ++v)
      for (std::size_t u = 0; u < s.n(); ++u) {
        const auto xv = orbit_field(o, basis_vector(s.n(), v)), xu = orbit_field(o, basis_vector(s.n(), u));
        const KForm value = contract({xv, xu}, w);
        const Rational expected = y0 * s.omega0[v][u] + yb * s.omega1[v][u];
        EXPECT_EQ(value.as_function(), SuperFunction::constant(o.chart, Gauss(expected)));
      }
  }
}

TEST(Heisenberg, RandomOrbitsAreSymplecticAndStronglyHamiltonian) {
  Rng rng(75);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_spec(rng, 3, 3);
    const Rational y0(uniform(rng, -2, 2)), yb(uniform(rng, -2, 2));
    const auto o = orbit_chart(s, y0, yb);
    if (o.type == OrbitType::Trivial || o.dim() == 0) continue;
    ++checked;
    const KForm w = kks_form(o);
    const auto rep = is_symplectic(w, {std::vector<Rational>(o.chart->p(), Rational(0))});
    EXPECT_TRUE(rep.symplectic());
    const auto mc = momentum_check(o);
    EXPECT_TRUE(mc.hamiltonian);
    EXPECT_TRUE(mc.strong);
    EXPECT_EQ(mc.pairs_checked, (s.n() + 2) * (s.n() + 2));
  }
  EXPECT_GT(checked, 15);
}

TEST(Heisenberg, ShiftedMomentumGivesPullbackCocycle) {
  Rng rng(76);
  for (int trial = 0; trial < 15; ++trial) {
    const auto s = random_spec(rng, 2, 2);
    const auto o = orbit_chart(s, Rational(1), Rational(1));
    const auto g = algebra_of(s);
    std::vector<Rational> shift(g.dim());
    for (auto& v : shift) v = small_rational(rng);
    const auto res = momentum_cocycle(o, shift);
    EXPECT_TRUE(res.constant);
    EXPECT_TRUE(res.even);
    EXPECT_TRUE((res.cocycle + pullback_class(g, shift)).is_zero());
    EXPECT_TRUE(momentum_cocycle(o, std::vector<Rational>(g.dim(), Rational(0))).cocycle.is_zero());
  }
}

TEST(Heisenberg, PointCochain) {
  const auto s = heisenberg_3_3_example();
  auto mu = OrbitPoint::at(s, Rational(2), Rational(3), 2);
  mu.x[0] = GrassmannNumber(2, Gauss(5));
  mu.xbar[3] = GrassmannNumber(2, Gauss(7));
  const auto v = point_cochain(s, mu);
  EXPECT_EQ(v, (std::vector<Rational>{5, 0, 0, 7, 0, 0, 2, 3}));
  mu.x[1] = GrassmannNumber(2, Gauss(Rational(0), Rational(1)));
  EXPECT_THROW(point_cochain(s, mu), AlgebraError);
}

TEST(Heisenberg, FundamentalFieldsOnTheAmbientSpace) {
  const auto s = heisenberg_3_3_example();
  const auto c = ambient_chart(s);
  EXPECT_EQ(c->p(), 6u);
  EXPECT_EQ(c->q(), 6u);
  const auto x = fundamental_field(s, basis_vector(6, 1), Rational(1), Rational(0));
  // e2 pairs with e1 through c0, so its field moves x1 only.
  for (std::size_t z = 0; z < c->dim(); ++z)
    if (c->coord_name(z) != "x1") EXPECT_TRUE(x[z].is_zero());
  EXPECT_FALSE(x[c->require("x1")].is_zero());
}
