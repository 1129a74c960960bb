#pragma once

#include "supersymp/dsl.hpp"
#include "supersymp/prequant.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ssp {

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct SectionReport {
  std::string section;
  std::vector<Check> checks;
  [[nodiscard]] bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  }
};

namespace verify_detail {

inline Check same(std::string name, const std::string& expected, const std::string& actual) {
  return {std::move(name), expected, actual, expected == actual};
}
inline Check flag(std::string name, bool expected, bool actual) {
  return {std::move(name), expected ? "true" : "false", actual ? "true" : "false", expected == actual};
}
template <class T>
Check equal(std::string name, const T& expected, const T& actual) {
  return {std::move(name), expected.to_string(), actual.to_string(), expected == actual};
}

struct Example2x2 {
  ChartPtr c = make_chart("M", {"x", "y"}, {"xi", "eta"});
  SuperFunction fn(const std::string& n) const { return SuperFunction::coordinate(c, n); }
  KForm d(const std::string& n) const { return KForm::differential(c, n); }
  SuperFunction k(long v) const { return SuperFunction::constant(c, Gauss(v)); }
  KForm omega() const { return wedge(d("x"), d("y")) + wedge(d("xi"), d("eta")) + wedge(d("x"), d("xi")); }
  VectorField X() const {
    VectorField v(c);
    v[c->require("x")] = k(2) * fn("y");
    v[c->require("eta")] = k(-2) * fn("y");
    return v;
  }
  VectorField Y() const {
    VectorField v(c);
    v[c->require("xi")] = -fn("xi");
    v[c->require("eta")] = fn("eta");
    v[c->require("y")] = fn("xi");
    return v;
  }
};

struct Example2x1 {
  ChartPtr c = make_chart("N", {"x", "y"}, {"xi"});
  SuperFunction fn(const std::string& n) const { return SuperFunction::coordinate(c, n); }
  KForm d(const std::string& n) const { return KForm::differential(c, n); }
  KForm omega() const { return wedge(d("x"), d("y")) + wedge(d("x"), d("xi")); }
  CFunction cf(const SuperFunction& a, const SuperFunction& b) const { return {a, b}; }
  SuperFunction zero() const { return SuperFunction(c); }
};

}  // namespace verify_detail

inline SectionReport verify_section3() {
  using namespace verify_detail;
  SectionReport r{"section3", {}};
  Example2x2 e;
  const KForm w = e.omega();
  const VectorField x = e.X(), y = e.Y();

  r.checks.push_back(equal("i_X omega = d(y^2)", ext_d(e.fn("y") * e.fn("y")), contract(x, w)));
  r.checks.push_back(equal("i_Y omega = d(eta xi)", ext_d(e.fn("eta") * e.fn("xi")), contract(y, w)));
  VectorField xy_expected(e.c);
  xy_expected[e.c->require("x")] = e.k(-2) * e.fn("xi");
  xy_expected[e.c->require("eta")] = e.k(-2) * e.fn("y") - e.k(2) * e.fn("xi");
  const VectorField xy = commutator(x, y);
  r.checks.push_back(equal("[X,Y]", xy_expected, xy));
  const KForm displayed = ext_d(e.fn("y") * e.fn("xi")) + e.k(2) * e.fn("xi") * e.d("xi");
  const KForm ixy = contract(xy, w);
  r.checks.push_back(equal("i_[X,Y] omega = d(y xi) + 2 xi dxi", displayed, ixy));
  r.checks.push_back(equal("d(d(y xi) + 2 xi dxi) = 2 dxi^dxi", KForm(Gauss(2) * wedge(e.d("xi"), e.d("xi"))),
                           ext_d(displayed)));
  r.checks.push_back(flag("i_[X,Y] omega is not closed", true, !ext_d(ixy).is_zero()));
  r.checks.push_back(equal("i_d/dy omega = -dx", KForm(-e.d("x")), contract(VectorField::coordinate(e.c, "y"), w)));
  r.checks.push_back(
      equal("i_d/dxi omega = deta - dx", KForm(e.d("eta") - e.d("x")), contract(VectorField::coordinate(e.c, "xi"), w)));
  r.checks.push_back(equal("i_d/deta omega = dxi", e.d("xi"), contract(VectorField::coordinate(e.c, "eta"), w)));
  r.checks.push_back(equal("L(X) omega = 0", KForm(e.c, 2), lie_derivative(x, w)));

  const auto rep = is_symplectic(w, {{Rational(0), Rational(0)}});
  r.checks.push_back(flag("2|2 form closed and non-degenerate", true, rep.closed && rep.nondegenerate()));

  Example2x1 m;
  const KForm w1 = m.omega();
  r.checks.push_back(equal("part0 of dx^dy + dx^dxi", wedge(m.d("x"), m.d("y")), w1.part(0)));
  r.checks.push_back(equal("part1 of dx^dy + dx^dxi", wedge(m.d("x"), m.d("xi")), w1.part(1)));
  const auto rep1 = is_symplectic(w1, {{Rational(0), Rational(0)}});
  r.checks.push_back(flag("2|1 form degenerate", true, rep1.closed && !rep1.nondegenerate()));
  r.checks.push_back(flag("2|1 form homogeneously non-degenerate", true, rep1.homogeneously_nondegenerate()));

  const auto y2 = hamiltonian_field(m.cf(m.fn("y") * m.fn("y"), m.zero()), w1);
  r.checks.push_back(same("y^2 c0 membership", "not_member", to_string(y2.status)));

  const SuperFunction x1 = m.fn("x");
  const std::vector<CFunction> members{
      m.cf(x1 * x1, m.zero()),
      m.cf(m.fn("y") * x1, m.fn("xi") * x1),
      m.cf(m.zero(), x1),
      m.cf(m.zero(), x1 * x1 * x1),
  };
  bool jacobi = true;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = 0; b < members.size(); ++b)
      for (std::size_t c = 0; c < members.size(); ++c) {
        const CFunction &f = members[a], &g = members[b], &h = members[c];
        const int ef = f.parity(), eg = g.parity(), eh = h.parity();
        auto pb = [&](const CFunction& u, const CFunction& v) { return poisson_bracket(u, v, w1); };
        auto sgn = [](int e) { return e ? Gauss(-1) : Gauss(1); };
        const CFunction total = sgn(ef * eh) * pb(f, pb(g, h)) + sgn(eg * ef) * pb(g, pb(h, f)) +
                                sgn(eh * eg) * pb(h, pb(f, g));
        if (!total.is_zero()) jacobi = false;
      }
  r.checks.push_back(flag("graded Jacobi on 2|1 Poisson members", true, jacobi));

  auto c01 = make_chart("P", {}, {"xi"});
  const KForm neg = Gauss(-1) * wedge(KForm::differential(c01, "xi"), KForm::differential(c01, "xi"));
  const auto dn = darboux_normal_form(neg);
  r.checks.push_back(same("Darboux signature of -dxi^dxi", "0", std::to_string(dn.ell)));

  const Document doc = parse("chart M even x,y odd xi,eta;\nform w = dx^dy + dxi^deta + dx^dxi;\n");
  const auto& parsed = std::get<KForm>(doc.require("form", "w").value);
  r.checks.push_back(same("parsed form term count", "3", std::to_string(parsed.terms().size())));
  r.checks.push_back(equal("parsed form", w, parsed));
  return r;
}

inline SectionReport verify_section6() {
  using namespace verify_detail;
  SectionReport r{"section6", {}};
  const HeisenbergSpec s = heisenberg_3_3_example();
  const std::vector<std::pair<int, int>> points{{1, 0}, {0, 1}, {1, 1}};
  for (auto [y0, yb] : points) {
    const Orbit o = orbit_chart(s, Rational(y0), Rational(yb));
    const std::string tag = std::string(to_string(o.type));
    const auto mc = momentum_check(o);
    r.checks.push_back(flag(tag + ": J(mu) = mu is a momentum map", true, mc.hamiltonian));
    r.checks.push_back(flag(tag + ": strongly hamiltonian", true, mc.strong));
    const auto cyc = momentum_cocycle(o, std::vector<Rational>(s.n() + 2, Rational(0)));
    r.checks.push_back(flag(tag + ": Omega_J = 0", true, cyc.constant && cyc.even && cyc.cocycle.is_zero()));
  }
  return r;
}

inline SectionReport verify_section7() {
  using namespace verify_detail;
  SectionReport r{"section7", {}};
  const HeisenbergSpec s = heisenberg_3_3_example();
  const SuperLieAlgebra g = algebra_of(s);
  const std::size_t n = s.n();

  std::string brackets;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      for (std::size_t a = 0; a < 2; ++a)
        if (!is_zero(g.c[i][j][n + a]))
          brackets += "[e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + "]=" + to_string(g.c[i][j][n + a]) +
                      "c" + std::to_string(a) + " ";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < 2; ++a)
      if (!is_zero(g.c[i][i][n + a]))
        brackets += "[e" + std::to_string(i + 1) + ",e" + std::to_string(i + 1) + "]=" + to_string(g.c[i][i][n + a]) +
                    "c" + std::to_string(a) + " ";
  r.checks.push_back(same("non-zero brackets", "[e2,e1]=1c0 [e4,e1]=1c1 [e5,e3]=1c1 [e5,e5]=1c0 [e6,e6]=-1c0 ",
                          brackets));
  r.checks.push_back(flag("Heisenberg algebra satisfies Jacobi", true, jacobi_check(g).ok));

  const int gens = configured_generators();
  GroupElement a = GroupElement::identity(s, gens);
  const long even_vals[3] = {2, 3, 5};
  for (std::size_t i = 0; i < 3; ++i) a.a[i] = GrassmannNumber(gens, Gauss(even_vals[i]));
  if (gens >= 3)
    for (std::size_t i = 3; i < 6; ++i) a.a[i] = GrassmannNumber::generator(gens, static_cast<int>(i - 2));
  a.b0 = GrassmannNumber(gens, Gauss(7));
  if (gens >= 5) a.b1 = GrassmannNumber::generator(gens, 4) + GrassmannNumber::generator(gens, 5);
  GroupElement minus = a;
  for (auto& v : minus.a) v = -v;
  minus.b0 = -minus.b0;
  minus.b1 = -minus.b1;
  const GroupElement prod = group_mul(s, a, minus);
  r.checks.push_back(flag("(a,b)(-a,-b) = identity", true, prod == GroupElement::identity(s, gens)));

  const Rational y0(1), yb(1);
  const OrbitPoint mu = OrbitPoint::at(s, y0, yb, gens);
  const OrbitPoint moved = coad(s, a, mu);
  auto expect = [&](const std::vector<GrassmannNumber>& v, std::size_t i) { return v[i]; };
  std::vector<GrassmannNumber> ex(n, GrassmannNumber(gens)), exb(n, GrassmannNumber(gens));
  ex[0] = -a.a[1];
  ex[1] = a.a[0];
  ex[4] = a.a[4];
  ex[5] = -a.a[5];
  exb[0] = -a.a[3];
  exb[2] = -a.a[4];
  exb[3] = a.a[0];
  exb[4] = a.a[2];
  bool coad_ok = true;
  std::string coad_txt;
  for (std::size_t i = 0; i < n; ++i) {
    coad_ok = coad_ok && expect(moved.x, i) == ex[i] && expect(moved.xbar, i) == exb[i];
    coad_txt += "x" + std::to_string(i + 1) + "=" + moved.x[i].to_string() + " xb" + std::to_string(i + 1) + "=" +
                moved.xbar[i].to_string() + " ";
  }
  r.checks.push_back({"coadjoint action at y0 = ybar1 = 1",
                      "x1=-a2 x2=a1 x5=a5 x6=-a6 xb1=-a4 xb3=-a5 xb4=a1 xb5=a3, others 0", coad_txt, coad_ok});

  const ChartPtr amb = ambient_chart(s);
  bool field_ok = true;
  std::string field_txt;
  for (std::size_t k = 0; k < n; ++k) {
    const VectorField got = fundamental_field(s, basis_vector(n, k), y0, yb);
    VectorField want(amb);
    auto put = [&](const std::string& coord, long c) {
      want[amb->require(coord)] += SuperFunction::constant(amb, Gauss(c));
    };
    switch (k) {
      case 0: put("x2", -1); put("xb4", -1); break;
      case 1: put("x1", 1); break;
      case 2: put("xb5", -1); break;
      case 3: put("xib1", 1); break;
      case 4: put("xi5", -1); put("xib3", 1); break;
      case 5: put("xi6", 1); break;
    }
    field_ok = field_ok && got == want;
    field_txt += "e" + std::to_string(k + 1) + ": " + got.to_string() + "; ";
  }
  r.checks.push_back({"fundamental vector fields",
                      "e1: -d/dx2 - d/dxb4; e2: d/dx1; e3: -d/dxb5; e4: d/dxib1; e5: -d/dxi5 + d/dxib3; e6: d/dxi6",
                      field_txt, field_ok});

  const auto mu_vec = point_cochain(s, mu);
  const CECochain cls = pullback_class(g, mu_vec);
  bool pattern = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational want = y0 * s.omega0[i][j] + yb * s.omega1[i][j];
      if (cls.eval({static_cast<int>(i), static_cast<int>(j)}) != want) pattern = false;
    }
  r.checks.push_back(flag("omega[mu] = y0 Omega0 + ybar1 Omega1", true, pattern));

  struct Case {
    int y0, yb;
    const char* type;
    const char* coords;
    const char* form;
  };
  const Case cases[] = {
      {1, 0, "case_i", "x1,x2|xi5,xi6", "dx1^dx2 + 1/2*dxi5^dxi5 - 1/2*dxi6^dxi6"},
      {0, 1, "case_ii", "xb4,xb5|xib1,xib3", "dxib1^dxb4 + dxib3^dxb5"},
      {1, 1, "case_iii", "x1,xb5,xh2|xi6,xib1,xih5",
       "dx1^dxh2 + dxib1^dxh2 + dxb5^dxih5 + 1/2*dxih5^dxih5 - 1/2*dxi6^dxi6"},
  };
  const Orbit trivial = orbit_chart(s, Rational(0), Rational(0));
  r.checks.push_back(same("y0 = ybar1 = 0 orbit", "trivial 0|0",
                          std::string(to_string(trivial.type)) + " " + std::to_string(trivial.chart->p()) + "|" +
                              std::to_string(trivial.chart->q())));
  for (const auto& c : cases) {
    const Orbit o = orbit_chart(s, Rational(c.y0), Rational(c.yb));
    std::vector<std::string> ev = o.chart->even, od = o.chart->odd;
    std::sort(ev.begin(), ev.end());
    std::sort(od.begin(), od.end());
    r.checks.push_back(same(std::string(c.type) + " type", c.type, to_string(o.type)));
    r.checks.push_back(same(std::string(c.type) + " coordinates", c.coords, dsl::join(ev, ",") + "|" + dsl::join(od, ",")));
    const KForm w = kks_form(o);
    const KForm want = parse_form(Document{}, o.chart, c.form);
    r.checks.push_back(equal(std::string(c.type) + " symplectic form", want, w));
    const auto rep = is_symplectic(w, {std::vector<Rational>(o.chart->p(), Rational(0))});
    r.checks.push_back(flag(std::string(c.type) + " closed and homogeneously non-degenerate", true,
                            rep.closed && rep.homogeneously_nondegenerate()));
    if (o.type == OrbitType::CaseIII)
      r.checks.push_back(flag("case_iii combined pairing degenerate", true, !rep.nondegenerate()));
  }
  return r;
}

inline SectionReport verify_section8() {
  using namespace verify_detail;
  SectionReport r{"section8", {}};
  const NerveComplex tet = build_nerve(closure({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
  CechCochain a(2);
  a.set({0, 1, 2}, Rational(3));
  const PeriodGroup per = period_group(a, tet);
  r.checks.push_back(same("tetrahedron period generator", "3", to_string(per.lambda)));
  r.checks.push_back(flag("prequantum exists for d = 1", true, prequantum_exists(per, Rational(1))));
  r.checks.push_back(flag("prequantum exists for d = 3", true, prequantum_exists(per, Rational(3))));
  r.checks.push_back(flag("prequantum exists for d = 2", false, prequantum_exists(per, Rational(2))));
  const Normalization nz = normalize_to_periods(a, tet);
  bool inside = true;
  for (const auto& t : tet.of_dim(2)) inside = inside && per.contains(nz.normalized.eval(t));
  r.checks.push_back(flag("normalized cocycle takes values in Per", true, inside));
  r.checks.push_back(same("sphere classification", "0", classify_prequantum(tet, Rational(3)).to_string()));
  const NerveComplex circle = build_nerve(closure({{0, 1}, {1, 2}, {0, 2}}));
  r.checks.push_back(same("circle classification", "Q/3Z", classify_prequantum(circle, Rational(3)).to_string()));
  return r;
}

inline SectionReport verify_section9() {
  using namespace verify_detail;
  SectionReport r{"section9", {}};
  auto ch = make_chart("M", {"x", "y"}, {});
  const SuperFunction x = SuperFunction::coordinate(ch, "x"), y = SuperFunction::coordinate(ch, "y");
  const KForm om = wedge(KForm::differential(ch, "x"), KForm::differential(ch, "y"));
  const PrequantChart pc = PrequantChart::create(om, x * KForm::differential(ch, "y"));
  const SuperFunction one = SuperFunction::constant(ch, Gauss(1)), zero(ch);

  VectorField want(pc.total);
  want[pc.t] = SuperFunction::constant(pc.total, Gauss(-1));
  r.checks.push_back(equal("eta of 1 c0 = -d/dt", want, eta_field(CFunction{one, zero}, pc)));
  VectorField want1(pc.total);
  want1[pc.tau] = SuperFunction::constant(pc.total, Gauss(-1));
  r.checks.push_back(equal("eta of 1 c1 = -d/dtau", want1, eta_field(CFunction{zero, one}, pc)));

  Example2x1 m;
  const KForm w1 = m.omega();
  const PrequantChart pm = PrequantChart::create(w1, m.fn("x") * m.d("y") + m.fn("x") * m.d("xi"));
  const SuperFunction mx = m.fn("x"), my = m.fn("y"), mxi = m.fn("xi");
  const std::vector<CFunction> fam{{mx * mx + my * mx, mx + mxi * mx}, {mx, m.zero()}, {my * mx * mx, mxi * mx * mx}};
  bool sym = symmetry_check(eta_field(CFunction{x, zero}, pc), pc) && symmetry_check(eta_field(CFunction{y, zero}, pc), pc);
  for (const auto& f : fam) sym = sym && symmetry_check(eta_field(f, pm), pm);
  r.checks.push_back(flag("eta_f preserves the connection", true, sym));

  const Gauss rr(make_rational(3, 2));
  const std::vector<SuperFunction> secs{x * y, x.pow(2) + y, one};
  bool scalar = true;
  for (const auto& s : secs)
    scalar = scalar && quantum_op(CFunction{SuperFunction::constant(ch, rr), zero}, s, pc) == rr * s;
  r.checks.push_back(flag("Q(r c0) = r id", true, scalar));
  bool annihilate = true;
  for (const auto& s : std::vector<SuperFunction>{mx * my, my.pow(2) + mx}) {
    const CFunction f{m.zero(), SuperFunction::constant(m.c, rr)};
    annihilate = annihilate && quantum_op(f, s, pm).is_zero();
  }
  r.checks.push_back(flag("Q(r c1) = 0 on xi-independent sections", true, annihilate));
  return r;
}

inline const std::vector<std::pair<std::string, std::function<SectionReport()>>>& verify_sections() {
  static const std::vector<std::pair<std::string, std::function<SectionReport()>>> all{
      {"section3", verify_section3}, {"section6", verify_section6}, {"section7", verify_section7},
      {"section8", verify_section8}, {"section9", verify_section9},
  };
  return all;
}

}  // namespace ssp
