#pragma once

#include "supersymp/liecoh.hpp"
#include "supersymp/symplectic.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace ssp {

/// Super Heisenberg data: parities of E and the pair (Omega^0, Omega^1) with
/// omega0[i][j] = Omega^0(e_i, e_j), omega1[i][j] = Omega^1(e_i, e_j).
struct HeisenbergSpec {
  std::vector<int> parity;
  Matrix<Rational> omega0;
  Matrix<Rational> omega1;

  [[nodiscard]] std::size_t n() const { return parity.size(); }
  [[nodiscard]] Rational omega(std::size_t i, std::size_t j) const { return omega0[i][j] + omega1[i][j]; }
  [[nodiscard]] const Matrix<Rational>& component(int alpha) const { return alpha ? omega1 : omega0; }

  /// Splits a full matrix of Omega values into its even and odd parts.
  /// `m[i][j]` is Omega(e_i, e_j).
  static HeisenbergSpec from_matrix(std::vector<int> parities, const Matrix<Rational>& m) {
    HeisenbergSpec s;
    s.parity = std::move(parities);
    const std::size_t n = s.parity.size();
    if (m.size() != n) throw AlgebraError("Omega matrix has the wrong size");
    s.omega0 = zeros<Rational>(n, n);
    s.omega1 = zeros<Rational>(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i].size() != n) throw AlgebraError("Omega matrix has the wrong size");
      for (std::size_t j = 0; j < n; ++j) ((s.parity[i] + s.parity[j]) & 1 ? s.omega1 : s.omega0)[i][j] = m[i][j];
    }
    s.validate();
    return s;
  }

  /// Same, for a matrix whose row index is the second argument: m[j][i] = Omega(e_i, e_j).
  static HeisenbergSpec from_row_second(std::vector<int> parities, const Matrix<Rational>& m) {
    return from_matrix(std::move(parities), transpose(m));
  }

  void validate() const {
    const std::size_t k = n();
    if (omega0.size() != k || omega1.size() != k) throw AlgebraError("Omega matrices have the wrong size");
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const int s = (parity[i] & parity[j]) ? 1 : -1;
        for (int a = 0; a < 2; ++a) {
          const auto& w = component(a);
          if (w[i][j] != s * w[j][i])
            throw AlgebraError("Omega is not graded skew-symmetric at (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
          if (!is_zero(w[i][j]) && ((parity[i] + parity[j]) & 1) != a)
            throw AlgebraError("Omega is not even at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
      }
  }
};

/// The 3|3 example: basis e1,e2,e3 even, e4,e5,e6 odd.
inline HeisenbergSpec heisenberg_3_3_example() {
  auto r = [](long v) { return Rational(v); };
  Matrix<Rational> rows = {
      {r(0), r(1), r(0), r(1), r(0), r(0)},  {r(-1), r(0), r(0), r(0), r(0), r(0)},
      {r(0), r(0), r(0), r(0), r(1), r(0)},  {r(-1), r(0), r(0), r(0), r(0), r(0)},
      {r(0), r(0), r(-1), r(0), r(1), r(0)}, {r(0), r(0), r(0), r(0), r(0), r(-1)},
  };
  return HeisenbergSpec::from_row_second({0, 0, 0, 1, 1, 1}, rows);
}

/// Basis e_1..e_n, c0, c1 with [e_i, e_j] = Omega^0(e_i,e_j) c0 + Omega^1(e_i,e_j) c1.
inline SuperLieAlgebra algebra_of(const HeisenbergSpec& s) {
  const std::size_t n = s.n();
  std::vector<int> par = s.parity;
  par.push_back(0);
  par.push_back(1);
  SuperLieAlgebra g(par);
  g.names[n] = "c0";
  g.names[n + 1] = "c1";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      g.c[i][j][n] = s.omega0[i][j];
      g.c[i][j][n + 1] = s.omega1[i][j];
    }
  return g;
}

/// Group element (a, b) with a = sum a^i e_i and b = b^0 c0 + b^1 c1.
struct GroupElement {
  std::vector<GrassmannNumber> a;
  GrassmannNumber b0, b1;

  static GroupElement identity(const HeisenbergSpec& s, int generators = configured_generators()) {
    return {std::vector<GrassmannNumber>(s.n(), GrassmannNumber(generators)), GrassmannNumber(generators),
            GrassmannNumber(generators)};
  }
  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.a == y.a && x.b0 == y.b0 && x.b1 == y.b1;
  }
};

namespace detail {

/// Omega^alpha(a, b) for Grassmann coordinate vectors, left-linear in each slot.
inline GrassmannNumber omega_pair(const HeisenbergSpec& s, int alpha, const std::vector<GrassmannNumber>& a,
                                  const std::vector<GrassmannNumber>& b, int generators) {
  GrassmannNumber r(generators);
  const auto& w = s.component(alpha);
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j) {
      if (is_zero(w[i][j])) continue;
      GrassmannNumber t = a[i] * b[j] * Gauss(w[i][j]);
      r += (s.parity[i] & s.parity[j]) ? -t : t;
    }
  return r;
}

inline void require_coordinate_parities(const HeisenbergSpec& s, const GroupElement& g) {
  if (g.a.size() != s.n()) throw AlgebraError("group element has the wrong number of coordinates");
  for (std::size_t i = 0; i < s.n(); ++i) {
    int p = g.a[i].parity();
    if (!g.a[i].is_zero() && p != s.parity[i]) throw AlgebraError("coordinate a^" + std::to_string(i + 1) + " has the wrong parity");
  }
  if (!g.b0.is_zero() && g.b0.parity() != 0) throw AlgebraError("b^0 must be even");
  if (!g.b1.is_zero() && g.b1.parity() != 1) throw AlgebraError("b^1 must be odd");
}

}  // namespace detail

/// (a, b)(a', b') = (a + a', b + b' + Omega(a, a')/2).
inline GroupElement group_mul(const HeisenbergSpec& s, const GroupElement& g, const GroupElement& h) {
  detail::require_coordinate_parities(s, g);
  detail::require_coordinate_parities(s, h);
  const int gens = g.b0.generator_count();
  GroupElement r;
  for (std::size_t i = 0; i < s.n(); ++i) r.a.push_back(g.a[i] + h.a[i]);
  const Gauss half(make_rational(1, 2));
  r.b0 = g.b0 + h.b0 + half * detail::omega_pair(s, 0, g.a, h.a, gens);
  r.b1 = g.b1 + h.b1 + half * detail::omega_pair(s, 1, g.a, h.a, gens);
  return r;
}

inline GroupElement group_inverse(const GroupElement& g) {
  GroupElement r;
  for (const auto& x : g.a) r.a.push_back(-x);
  r.b0 = -g.b0;
  r.b1 = -g.b1;
  return r;
}

/// Point of the dual: x_i, xbar_i (Grassmann values) and the invariants y0, ybar1.
struct OrbitPoint {
  std::vector<GrassmannNumber> x;
  std::vector<GrassmannNumber> xbar;
  Rational y0;
  Rational ybar1;

  static OrbitPoint at(const HeisenbergSpec& s, const Rational& y0, const Rational& ybar1,
                       int generators = configured_generators()) {
    return {std::vector<GrassmannNumber>(s.n(), GrassmannNumber(generators)),
            std::vector<GrassmannNumber>(s.n(), GrassmannNumber(generators)), y0, ybar1};
  }
  friend bool operator==(const OrbitPoint& a, const OrbitPoint& b) {
    return a.x == b.x && a.xbar == b.xbar && a.y0 == b.y0 && a.ybar1 == b.ybar1;
  }
};

/// Coad(g): x_i -> x_i - (-1)^{e_i} y0 Omega^0(a, e_i), xbar_i -> xbar_i - ybar1 Omega^1(a, e_i).
inline OrbitPoint coad(const HeisenbergSpec& s, const GroupElement& g, const OrbitPoint& mu) {
  detail::require_coordinate_parities(s, g);
  OrbitPoint r = mu;
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j) {
      if (!is_zero(s.omega0[j][i])) {
        Rational c = mu.y0 * s.omega0[j][i];
        if (s.parity[i]) c = -c;
        r.x[i] -= g.a[j] * Gauss(c);
      }
      if (!is_zero(s.omega1[j][i])) r.xbar[i] -= g.a[j] * Gauss(mu.ybar1 * s.omega1[j][i]);
    }
  return r;
}

/// Ambient dual coordinates: index i < n is x_{i+1}, index n + i is xbar_{i+1}.
inline int ambient_parity(const HeisenbergSpec& s, std::size_t a) {
  const std::size_t i = a % s.n();
  return a < s.n() ? s.parity[i] : 1 - s.parity[i];
}

inline std::string ambient_name(const HeisenbergSpec& s, std::size_t a, bool hat = false) {
  const std::size_t i = a % s.n();
  std::string name = ambient_parity(s, a) ? "xi" : "x";
  if (a >= s.n()) name += "b";
  if (hat) name += "h";
  return name + std::to_string(i + 1);
}

/// Coefficient of d/d(ambient a) in the fundamental field of v (real coefficients).
inline Matrix<Rational> fundamental_matrix(const HeisenbergSpec& s, const Rational& y0, const Rational& ybar1) {
  const std::size_t n = s.n();
  auto f = zeros<Rational>(n, 2 * n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < n; ++i) {
      Rational c0 = y0 * s.omega0[v][i];
      f[v][i] = s.parity[i] ? -c0 : c0;
      f[v][n + i] = ybar1 * s.omega1[v][i];
    }
  return f;
}

inline ChartPtr ambient_chart(const HeisenbergSpec& s) {
  std::vector<std::string> even, odd;
  for (std::size_t a = 0; a < 2 * s.n(); ++a) (ambient_parity(s, a) ? odd : even).push_back(ambient_name(s, a));
  return make_chart("dual", even, odd);
}

/// Fundamental field of v = sum v[i] e_i on the ambient dual chart.
inline VectorField fundamental_field(const HeisenbergSpec& s, const std::vector<Rational>& v, const Rational& y0,
                                     const Rational& ybar1) {
  ChartPtr c = ambient_chart(s);
  auto f = fundamental_matrix(s, y0, ybar1);
  VectorField x(c);
  for (std::size_t a = 0; a < 2 * s.n(); ++a) {
    Rational coef(0);
    for (std::size_t k = 0; k < s.n(); ++k) coef += v.at(k) * f[k][a];
    if (!is_zero(coef)) x[c->require(ambient_name(s, a))] = SuperFunction::constant(c, Gauss(coef));
  }
  return x;
}

enum class OrbitType { Trivial, CaseI, CaseII, CaseIII };

inline const char* to_string(OrbitType t) {
  switch (t) {
    case OrbitType::Trivial: return "trivial";
    case OrbitType::CaseI: return "case_i";
    case OrbitType::CaseII: return "case_ii";
    default: return "case_iii";
  }
}

inline OrbitType orbit_type(const Rational& y0, const Rational& ybar1) {
  if (is_zero(y0)) return is_zero(ybar1) ? OrbitType::Trivial : OrbitType::CaseII;
  return is_zero(ybar1) ? OrbitType::CaseI : OrbitType::CaseIII;
}

/// Orbit through a real point, parametrized by a maximal independent set of
/// ambient coordinates chosen greedily in the order x_1..x_n, xbar_1..xbar_n.
/// The other coordinates are affine in the chosen ones; a chosen coordinate
/// that they depend on is renamed with a hat.
struct Orbit {
  HeisenbergSpec spec;
  OrbitType type = OrbitType::Trivial;
  OrbitPoint base;
  ChartPtr chart;
  std::vector<std::size_t> ambient;    // orbit coordinate -> ambient index
  Matrix<Rational> field;              // n x r, component of e_v^* along orbit coordinate
  std::vector<std::size_t> rows;       // basis vectors with invertible square field block
  Matrix<Rational> dependence;         // 2n x r, ambient coordinate as affine function of orbit coordinates

  [[nodiscard]] std::size_t dim() const { return ambient.size(); }
};

inline Orbit orbit_chart(const HeisenbergSpec& s, const OrbitPoint& base) {
  auto real = [](const GrassmannNumber& g) { return g.is_scalar() && g.body().is_real(); };
  for (std::size_t i = 0; i < s.n(); ++i) {
    const GrassmannNumber& even_slot = s.parity[i] ? base.xbar[i] : base.x[i];
    const GrassmannNumber& odd_slot = s.parity[i] ? base.x[i] : base.xbar[i];
    if (!real(even_slot) || !odd_slot.is_zero()) throw AlgebraError("orbit base point must have real coordinates");
  }
  Orbit o;
  o.spec = s;
  o.base = base;
  o.type = orbit_type(base.y0, base.ybar1);
  const std::size_t n = s.n();
  auto full = fundamental_matrix(s, base.y0, base.ybar1);

  Echelon<Rational> cols(n);
  std::vector<std::size_t> chosen;
  for (std::size_t a = 0; a < 2 * n; ++a) {
    SparseRow<Rational> col;
    for (std::size_t v = 0; v < n; ++v)
      if (!is_zero(full[v][a])) col.emplace_back(v, full[v][a]);
    if (col.empty()) continue;
    if (cols.insert(std::move(col)) == Echelon<Rational>::Insert::NewPivot) chosen.push_back(a);
  }
  std::stable_partition(chosen.begin(), chosen.end(), [&](std::size_t a) { return ambient_parity(s, a) == 0; });
  const std::size_t r = chosen.size();
  o.ambient = chosen;

  // chosen block and dependence of every ambient column on it
  auto block = zeros<Rational>(n, r);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t c = 0; c < r; ++c) block[v][c] = full[v][chosen[c]];
  o.field = block;
  o.dependence = zeros<Rational>(2 * n, r);
  std::vector<bool> hat(r, false);
  for (std::size_t a = 0; a < 2 * n; ++a) {
    std::vector<Rational> col(n);
    for (std::size_t v = 0; v < n; ++v) col[v] = full[v][a];
    auto lam = solve(block, col, r);
    if (!lam) throw AlgebraError("fundamental field column outside the chosen span");
    o.dependence[a] = *lam;
    if (std::find(chosen.begin(), chosen.end(), a) != chosen.end()) continue;
    for (std::size_t c = 0; c < r; ++c)
      if (!is_zero((*lam)[c])) hat[c] = true;
  }
  std::vector<std::string> even, odd;
  for (std::size_t c = 0; c < r; ++c)
    (ambient_parity(s, chosen[c]) ? odd : even).push_back(ambient_name(s, chosen[c], hat[c]));
  o.chart = make_chart("orbit", even, odd);

  Echelon<Rational> rowspan(r);
  for (std::size_t v = 0; v < n; ++v) {
    SparseRow<Rational> row;
    for (std::size_t c = 0; c < r; ++c)
      if (!is_zero(block[v][c])) row.emplace_back(c, block[v][c]);
    if (!row.empty() && rowspan.insert(std::move(row)) == Echelon<Rational>::Insert::NewPivot) o.rows.push_back(v);
  }
  return o;
}

inline Orbit orbit_chart(const HeisenbergSpec& s, const Rational& y0, const Rational& ybar1) {
  return orbit_chart(s, OrbitPoint::at(s, y0, ybar1));
}

/// Fundamental field of v = sum v[k] e_k restricted to the orbit chart.
inline VectorField orbit_field(const Orbit& o, const std::vector<Rational>& v) {
  VectorField x(o.chart);
  for (std::size_t c = 0; c < o.dim(); ++c) {
    Rational coef(0);
    for (std::size_t k = 0; k < o.spec.n(); ++k) coef += v.at(k) * o.field[k][c];
    if (!is_zero(coef)) x[c] = SuperFunction::constant(o.chart, Gauss(coef));
  }
  return x;
}

inline std::vector<Rational> basis_vector(std::size_t n, std::size_t k) {
  std::vector<Rational> v(n, Rational(0));
  v.at(k) = 1;
  return v;
}

/// KKS form from omega(v*, w*) = y0 Omega^0(v, w) + ybar1 Omega^1(v, w).
inline KForm kks_form(const Orbit& o) {
  if (o.type == OrbitType::Trivial) throw NotSymplectic("the trivial orbit carries no symplectic form");
  const std::size_t r = o.dim();
  auto fs = zeros<Rational>(r, r);
  auto ps = zeros<Rational>(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      fs[i][j] = o.field[o.rows[i]][j];
      ps[i][j] = o.base.y0 * o.spec.omega0[o.rows[i]][o.rows[j]] + o.base.ybar1 * o.spec.omega1[o.rows[i]][o.rows[j]];
    }
  auto finv = inverse(fs);
  if (!finv) throw AlgebraError("orbit field block is singular");
  auto gram = multiply(multiply(*finv, ps), transpose(*finv));
  KForm w(o.chart, 2);
  for (std::size_t a = 0; a < r; ++a) {
    if (o.chart->parity(a) == 1 && !is_zero(gram[a][a]))
      w.add_term({static_cast<int>(a), static_cast<int>(a)},
                 SuperFunction::constant(o.chart, Gauss(gram[a][a] / 2)));
    for (std::size_t b = a + 1; b < r; ++b)
      if (!is_zero(gram[b][a]))
        w.add_term({static_cast<int>(a), static_cast<int>(b)}, SuperFunction::constant(o.chart, Gauss(gram[b][a])));
  }
  if (gram_matrix(w) != gram) throw AlgebraError("orbit pairing is not graded skew-symmetric");
  return w;
}

/// Ambient coordinate a as a function on the orbit chart.
inline SuperFunction ambient_function(const Orbit& o, std::size_t a) {
  const std::size_t n = o.spec.n();
  const GrassmannNumber& b = a < n ? o.base.x[a] : o.base.xbar[a - n];
  SuperFunction f = SuperFunction::constant(o.chart, b);
  for (std::size_t c = 0; c < o.dim(); ++c) {
    const Rational& lam = o.dependence[a][c];
    if (is_zero(lam)) continue;
    const std::size_t ac = o.ambient[c];
    const GrassmannNumber& bc = ac < n ? o.base.x[ac] : o.base.xbar[ac - n];
    f += SuperFunction::coordinate(o.chart, c) * SuperFunction::constant(o.chart, Gauss(lam));
    f -= SuperFunction::constant(o.chart, bc * Gauss(lam));
  }
  return f;
}

/// <v, J> for basis element k of algebra_of(spec), with J(mu) = mu.
inline CFunction momentum_component(const Orbit& o, std::size_t k) {
  const std::size_t n = o.spec.n();
  if (k == n) return {SuperFunction::constant(o.chart, Gauss(o.base.y0)), SuperFunction(o.chart)};
  if (k == n + 1) return {SuperFunction(o.chart), SuperFunction::constant(o.chart, Gauss(o.base.ybar1))};
  SuperFunction x = ambient_function(o, k);
  if (o.spec.parity.at(k)) x = -x;
  return {x, ambient_function(o, n + k)};
}

/// Fundamental field of basis element k of algebra_of(spec) on the orbit chart.
inline VectorField orbit_basis_field(const Orbit& o, std::size_t k) {
  if (k >= o.spec.n()) return VectorField(o.chart);
  return orbit_field(o, basis_vector(o.spec.n(), k));
}

struct MomentumReport {
  bool hamiltonian = true;  // i_{v*} omega-bar = d<v, J>
  bool strong = true;       // {<v,J>, <w,J>} = <[v,w], J>
  std::vector<std::string> failures;
  std::size_t pairs_checked = 0;
};

inline MomentumReport momentum_check(const Orbit& o) {
  MomentumReport rep;
  if (o.type == OrbitType::Trivial) return rep;
  const KForm w = kks_form(o);
  const CKForm wb = double_form(w);
  const SuperLieAlgebra g = algebra_of(o.spec);
  const std::size_t m = g.dim();
  std::vector<CFunction> j;
  std::vector<VectorField> fields;
  for (std::size_t k = 0; k < m; ++k) {
    j.push_back(momentum_component(o, k));
    fields.push_back(orbit_basis_field(o, k));
    const CKForm lhs = contract(fields[k], wb);
    const CKForm rhs = ext_d(j[k]);
    if (!(lhs.part0 == rhs.part0 && lhs.part1 == rhs.part1)) {
      rep.hamiltonian = false;
      rep.failures.push_back("i_v omega != d<v,J> for " + g.names[k]);
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      ++rep.pairs_checked;
      CFunction lhs = fields[a].apply(j[b]);
      CFunction rhs = CFunction::zero(o.chart);
      for (std::size_t k = 0; k < m; ++k)
        if (!is_zero(g.c[a][b][k])) rhs += SuperFunction::constant(o.chart, Gauss(g.c[a][b][k])) * j[k];
      if (!(lhs == rhs)) {
        rep.strong = false;
        rep.failures.push_back("{J_" + g.names[a] + ", J_" + g.names[b] + "} != J_[" + g.names[a] + "," +
                               g.names[b] + "]");
      }
    }
  return rep;
}

struct MomentumCocycle {
  CECochain cocycle;
  bool constant = true;
  bool even = true;
};

/// Omega_J(v, w) = {<v,J'>, <w,J'>} - <[v,w], J'> for J' = J + shift, where
/// shift[k] is the constant added to the c_{e_k} component of <e_k, J>.
inline MomentumCocycle momentum_cocycle(const Orbit& o, const std::vector<Rational>& shift) {
  const SuperLieAlgebra g = algebra_of(o.spec);
  const std::size_t m = g.dim();
  if (shift.size() != m) throw AlgebraError("shift needs one value per basis element");
  MomentumCocycle res{CECochain(2, g.parity)};
  if (o.type == OrbitType::Trivial) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        Rational v(0);
        for (std::size_t k = 0; k < m; ++k) v -= g.c[a][b][k] * shift[k];
        res.cocycle.set({static_cast<int>(a), static_cast<int>(b)}, v);
      }
    return res;
  }
  const KForm w = kks_form(o);
  std::vector<CFunction> j;
  for (std::size_t k = 0; k < m; ++k) {
    CFunction jk = momentum_component(o, k);
    SuperFunction s = SuperFunction::constant(o.chart, Gauss(shift[k]));
    if (g.parity[k])
      jk.f1 += s;
    else
      jk.f0 += s;
    j.push_back(jk);
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      CFunction val = poisson_bracket(j[a], j[b], w);
      for (std::size_t k = 0; k < m; ++k)
        if (!is_zero(g.c[a][b][k])) val -= SuperFunction::constant(o.chart, Gauss(g.c[a][b][k])) * j[k];
      const int alpha = (g.parity[a] + g.parity[b]) & 1;
      if (!val.component(1 - alpha).is_zero()) res.even = false;
      const SuperFunction& f = val.component(alpha);
      if (!f.is_constant() || !f.as_constant().is_scalar()) {
        res.constant = false;
        continue;
      }
      Gauss cst = f.as_constant().body();
      if (!cst.is_real()) {
        res.constant = false;
        continue;
      }
      res.cocycle.set({static_cast<int>(a), static_cast<int>(b)}, cst.re);
    }
  return res;
}

/// The real 1-cochain mu: e_i -> x_i (e_i even) or xbar_i (e_i odd), c0 -> y0, c1 -> ybar1.
inline std::vector<Rational> point_cochain(const HeisenbergSpec& s, const OrbitPoint& mu) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < s.n(); ++i) {
    const GrassmannNumber& g = s.parity[i] ? mu.xbar[i] : mu.x[i];
    if (!g.is_scalar() || !g.body().is_real()) throw AlgebraError("point_cochain needs a real point");
    v.push_back(g.body().re);
  }
  v.push_back(mu.y0);
  v.push_back(mu.ybar1);
  return v;
}

}  // namespace ssp
