#include "support.hpp"
#include "supersymp/dsl.hpp"
#include "supersymp/prequant.hpp"

#include <gtest/gtest.h>

using namespace ssp;
using namespace ssp::testing;

namespace {

const Gauss I = Gauss::imag_unit();

// Constant even symplectic form on a p|q chart: sum dx_{2i}^dx_{2i+1} plus sum c_k dxi_k^dxi_k.
KForm standard_form(const ChartPtr& c) {
  KForm w(c, 2);
  for (std::size_t i = 0; i + 1 < c->p(); i += 2)
    w += wedge(KForm::differential(c, i), KForm::differential(c, i + 1));
  for (std::size_t k = c->p(); k < c->dim(); ++k)
    w += SuperFunction::constant(c, Gauss(make_rational(k % 2 ? 1 : -1, 2))) *
         wedge(KForm::differential(c, k), KForm::differential(c, k));
  return w;
}

// theta with d(theta) = w for constant w: z_a dz_b for each dz_a^dz_b.
KForm primitive(const KForm& w) {
  const ChartPtr& c = w.chart();
  KForm theta(c, 1);
  for (const auto& [word, g] : w.terms())
    theta += g * SuperFunction::coordinate(c, static_cast<std::size_t>(word[0])) *
             KForm::differential(c, static_cast<std::size_t>(word[1]));
  return theta;
}

ChartPtr even_chart(std::size_t pairs, std::size_t q) {
  std::vector<std::string> even, odd;
  for (std::size_t i = 0; i < 2 * pairs; ++i) even.push_back("x" + std::to_string(i + 1));
  for (std::size_t k = 0; k < q; ++k) odd.push_back("xi" + std::to_string(k + 1));
  return make_chart("R", even, odd);
}

// The c1 component is constant since omega has no odd part.
CFunction random_cfunction(Rng& rng, const ChartPtr& c) {
  return {random_function(rng, c, 2, -1, 3), SuperFunction::constant(c, Gauss(small_rational(rng)))};
}

}  // namespace

TEST(Prequant, CreationChecksPrimitive) {
  const auto c = make_chart("P", {"x", "y"}, {});
  const KForm w = parse_form(Document{}, c, "dx^dy");
  EXPECT_NO_THROW(PrequantChart::create(w, parse_form(Document{}, c, "x*dy")));
  EXPECT_NO_THROW(PrequantChart::create(w, parse_form(Document{}, c, "-y*dx")));
  EXPECT_THROW(PrequantChart::create(w, parse_form(Document{}, c, "y*dx")), FormError);
  EXPECT_THROW(PrequantChart::create(w, w), FormError);
}

TEST(Prequant, FiberNamesAvoidClashes) {
  const auto c = make_chart("C", {"t", "s"}, {"tau"});
  const KForm w = parse_form(Document{}, c, "dt^ds + 1/2*dtau^dtau");
  const auto pc = PrequantChart::create(w, parse_form(Document{}, c, "t*ds + 1/2*tau*dtau"));
  EXPECT_EQ(pc.total->p(), 3u);
  EXPECT_EQ(pc.total->q(), 2u);
  EXPECT_NE(pc.total->coord_name(pc.t), "t");
  EXPECT_NE(pc.total->coord_name(pc.tau), "tau");
  EXPECT_EQ(pc.total->coord_name(pc.embed[2]), "tau");
}

TEST(Prequant, PlaneOperatorsByHand) {
  // omega = dx^dy, theta = x dy: X_x = -d/dy, X_y = d/dx.
  const auto c = make_chart("P", {"x", "y"}, {});
  const auto pc = PrequantChart::create(parse_form(Document{}, c, "dx^dy"), parse_form(Document{}, c, "x*dy"));
  const CFunction fx = parse_cfunction(Document{}, c, "x*c0"), fy = parse_cfunction(Document{}, c, "y*c0");
  const SuperFunction s = parse_function(Document{}, c, "y^2 + x*y");
  // Q(x) s = i ds/dy.
  EXPECT_EQ(quantum_op(fx, s, pc), I * parse_function(Document{}, c, "2*y + x"));
  // Q(y) s = -i ds/dx + y s.
  EXPECT_EQ(quantum_op(fy, s, pc), -I * parse_function(Document{}, c, "y") + parse_function(Document{}, c, "y^3 + x*y^2"));
  const auto one = parse_cfunction(Document{}, c, "1*c0");
  EXPECT_EQ(quantum_op(one, s, pc), s);
  EXPECT_TRUE(rep_check(fx, fy, pc, {s, parse_function(Document{}, c, "x^3")}).ok);
}

TEST(Prequant, PlaneEtaByHand) {
  const auto c = make_chart("P", {"x", "y"}, {});
  const auto pc = PrequantChart::create(parse_form(Document{}, c, "dx^dy"), parse_form(Document{}, c, "x*dy"));
  // f = y: X_f = d/dx, <X_f, theta> = 0, so eta = d/dx - y d/dt.
  const VectorField eta = eta_field(parse_cfunction(Document{}, c, "y*c0"), pc);
  for (std::size_t z = 0; z < pc.total->dim(); ++z) {
    const std::string n = pc.total->coord_name(z);
    if (n == "x")
      EXPECT_EQ(eta[z], SuperFunction::constant(pc.total, Gauss(1)));
    else if (z == pc.t)
      EXPECT_EQ(eta[z], -SuperFunction::coordinate(pc.total, pc.total->require("y")));
    else
      EXPECT_TRUE(eta[z].is_zero()) << n;
  }
}

TEST(Prequant, EtaIsAContactSymmetry) {
  Rng rng(91);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = even_chart(static_cast<std::size_t>(uniform(rng, 1, 2)), static_cast<std::size_t>(uniform(rng, 0, 2)));
    const KForm w = standard_form(c);
    KForm theta = primitive(w) + ext_d(random_function(rng, c, 2, -1, 2));
    const auto pc = PrequantChart::create(w, theta);
    const CFunction f = random_cfunction(rng, c);
    const VectorField eta = eta_field(f, pc);
    const CKForm ia = contract(eta, pc.alpha);
    EXPECT_EQ(ia.part0.as_function(), -pc.lift(f.f0));
    EXPECT_EQ(ia.part1.as_function(), -pc.lift(f.f1));
    EXPECT_TRUE(symmetry_check(eta, pc));
    EXPECT_EQ(pc.project(eta), require_hamiltonian(f, w));
    checked += !f.is_zero();
  }
  EXPECT_GT(checked, 15);
}

TEST(Prequant, BareLiftIsNotASymmetry) {
  const auto c = make_chart("P", {"x", "y"}, {});
  const auto pc = PrequantChart::create(parse_form(Document{}, c, "dx^dy"), parse_form(Document{}, c, "x*dy"));
  const CFunction f = parse_cfunction(Document{}, c, "y^2*c0");
  EXPECT_TRUE(symmetry_check(eta_field(f, pc), pc));
  EXPECT_FALSE(symmetry_check(pc.lift(require_hamiltonian(f, pc.omega)), pc));
}

TEST(Prequant, LiftAndProjectAreInverse) {
  Rng rng(92);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = even_chart(1, 2);
    const auto pc = PrequantChart::create(standard_form(c), primitive(standard_form(c)));
    const VectorField x = random_field(rng, c, 2, static_cast<int>(uniform(rng, 0, 1)));
    EXPECT_EQ(pc.project(pc.lift(x)), x);
  }
}

TEST(Prequant, QuantizationIsARepresentation) {
  Rng rng(93);
  for (int trial = 0; trial < 12; ++trial) {
    const auto c = even_chart(1, static_cast<std::size_t>(uniform(rng, 0, 2)));
    const KForm w = standard_form(c);
    const auto pc = PrequantChart::create(w, primitive(w) + ext_d(random_function(rng, c, 2, 0, 2)));
    const CFunction f = random_cfunction(rng, c), g = random_cfunction(rng, c);
    const std::vector<SuperFunction> sections{random_function(rng, c, 2, -1, 3), random_function(rng, c, 3, -1, 3)};
    const auto r = rep_check(f, g, pc, sections);
    EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(Prequant, OperatorIsLinearInF) {
  Rng rng(94);
  const auto c = even_chart(1, 2);
  const KForm w = standard_form(c);
  const auto pc = PrequantChart::create(w, primitive(w));
  for (int trial = 0; trial < 10; ++trial) {
    const CFunction f = random_cfunction(rng, c), g = random_cfunction(rng, c);
    const SuperFunction s = random_function(rng, c, 2, -1, 3);
    EXPECT_EQ(quantum_op(f + g, s, pc), quantum_op(f, s, pc) + quantum_op(g, s, pc));
  }
}

TEST(Prequant, NonHamiltonianFunctionsRejected) {
  const auto doc = parse(
      "chart N even x,y odd xi;\n"
      "form omega = dx^dy + dx^dxi;\n"
      "form theta = x*dy + x*dxi;\n");
  const auto c = doc.require("chart").chart;
  const auto pc = PrequantChart::create(parse_form(doc, c, "omega"), parse_form(doc, c, "theta"));
  const CFunction bad = parse_cfunction(doc, c, "y^2*c0");
  EXPECT_THROW(eta_field(bad, pc), NotInPoissonAlgebra);
  EXPECT_THROW(quantum_op(bad, parse_function(doc, c, "x"), pc), NotInPoissonAlgebra);
}

TEST(Prequant, MixedFormRepresentation) {
  const auto doc = parse(
      "chart N even x,y odd xi;\n"
      "form omega = dx^dy + dx^dxi;\n"
      "form theta = x*dy + x*dxi;\n");
  const auto c = doc.require("chart").chart;
  const auto pc = PrequantChart::create(parse_form(doc, c, "omega"), parse_form(doc, c, "theta"));
  const std::vector<CFunction> fs{parse_cfunction(doc, c, "(x^2 + y*x)*c0 + (x + xi*x)*c1"),
                                  parse_cfunction(doc, c, "x*c0"),
                                  parse_cfunction(doc, c, "y*x^2*c0 + xi*x^2*c1")};
  const std::vector<SuperFunction> sections{parse_function(doc, c, "x*y"), parse_function(doc, c, "y^2 + x*xi")};
  for (const auto& f : fs) {
    EXPECT_TRUE(symmetry_check(eta_field(f, pc), pc));
    for (const auto& g : fs) EXPECT_TRUE(rep_check(f, g, pc, sections).ok);
  }
}
