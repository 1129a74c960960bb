#pragma once

#include "supersymp/forms.hpp"
#include "supersymp/linalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ssp {

struct NotSymplectic : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotInPoissonAlgebra : std::domain_error {
  using std::domain_error::domain_error;
};

/// Coefficient matrix K[a][b]: body at `point` of the dz_b-coefficient of i_{d/dz_a} omega.
inline Matrix<Gauss> contraction_matrix(const KForm& omega, const std::vector<Rational>& point) {
  const ChartPtr& c = omega.chart();
  if (omega.degree() != 2) throw FormError("expected a 2-form");
  auto k = zeros<Gauss>(c->dim(), c->dim());
  for (std::size_t a = 0; a < c->dim(); ++a) {
    KForm one = contract_coordinate(a, omega);
    for (const auto& [w, f] : one.terms()) k[a][w[0]] = f.body_at(point);
  }
  return k;
}

struct PointReport {
  std::vector<Rational> point;
  Matrix<Gauss> m0, m1;
  bool nondegenerate = false;
  bool homogeneously_nondegenerate = false;
};

struct SymplecticReport {
  bool closed = false;
  std::vector<PointReport> points;
  [[nodiscard]] bool nondegenerate() const {
    return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.nondegenerate; });
  }
  [[nodiscard]] bool homogeneously_nondegenerate() const {
    return std::all_of(points.begin(), points.end(),
                       [](const auto& p) { return p.homogeneously_nondegenerate; });
  }
  [[nodiscard]] bool symplectic() const { return closed && homogeneously_nondegenerate(); }
};

inline SymplecticReport is_symplectic(const KForm& omega,
                                      const std::vector<std::vector<Rational>>& points) {
  if (omega.degree() != 2) throw FormError("is_symplectic expects a 2-form");
  const std::size_t n = omega.chart()->dim();
  SymplecticReport rep;
  rep.closed = ext_d(omega).is_zero();
  CKForm cw = double_form(omega);
  for (const auto& pt : points) {
    if (pt.size() != omega.chart()->p()) throw ChartError("base point needs one value per even coordinate");
    PointReport pr;
    pr.point = pt;
    pr.m0 = contraction_matrix(cw.part0, pt);
    pr.m1 = contraction_matrix(cw.part1, pt);
    auto sum = zeros<Gauss>(n, n);
    auto stacked = zeros<Gauss>(n, 2 * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        sum[a][b] = pr.m0[a][b] + pr.m1[a][b];
        stacked[a][b] = pr.m0[a][b];
        stacked[a][n + b] = pr.m1[a][b];
      }
    pr.nondegenerate = rank(sum) == n;
    pr.homogeneously_nondegenerate = rank(stacked) == n;
    rep.points.push_back(std::move(pr));
  }
  return rep;
}

/// A closed 2-form that is homogeneously non-degenerate at the supplied points.
struct SymplecticData {
  KForm omega;
  CKForm doubled;

  static SymplecticData create(const KForm& omega, const std::vector<std::vector<Rational>>& points) {
    auto rep = is_symplectic(omega, points);
    if (!rep.closed) throw NotSymplectic("form is not closed");
    if (!rep.homogeneously_nondegenerate()) throw NotSymplectic("form is homogeneously degenerate");
    return {omega, double_form(omega)};
  }
  /// Uses the origin as the only sample point.
  static SymplecticData create(const KForm& omega) {
    return create(omega, {std::vector<Rational>(omega.chart()->p(), Rational(0))});
  }
};

enum class Membership { Member, NotMember, Inconclusive };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NotMember: return "not_member";
    default: return "inconclusive";
  }
}

struct HamiltonianResult {
  Membership status = Membership::Inconclusive;
  std::optional<VectorField> field;
  int degree_bound = 0;
  std::string reason;
};

namespace detail {

inline bool has_scalar_coefficients(const KForm& w) {
  for (const auto& [word, f] : w.terms())
    for (const auto& [m, c] : f.terms()) {
      if (m.mask) return false;
      for (int e : m.exps)
        if (e) return false;
    }
  return true;
}

/// Even exponent vectors of total degree <= d.
inline void exponent_vectors(std::size_t p, int d, std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
  if (cur.size() == p) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= d; ++e) {
    cur.push_back(e);
    exponent_vectors(p, d - e, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Mask> submasks(Mask m) {
  std::vector<Mask> out;
  Mask s = m;
  for (;;) {
    out.push_back(s);
    if (s == 0) break;
    s = (s - 1) & m;
  }
  return out;
}

/// Equations i_X omega_alpha = df^alpha for constant scalar omega, solved pointwise.
inline HamiltonianResult hamiltonian_constant(const CFunction& f, const CKForm& cw) {
  const ChartPtr& c = cw.chart();
  const std::size_t n = c->dim();
  auto m = zeros<Gauss>(2 * n, n);
  for (int alpha = 0; alpha < 2; ++alpha)
    for (std::size_t z = 0; z < n; ++z) {
      const KForm iz = contract_coordinate(z, cw.component(alpha));
      for (const auto& [w, g] : iz.terms())
        m[alpha * n + w[0]][z] = g.terms().empty() ? Gauss() : g.terms().begin()->second;
    }
  std::vector<SuperFunction> rhs(2 * n, SuperFunction(c));
  for (int alpha = 0; alpha < 2; ++alpha) {
    const KForm df = ext_d(f.component(alpha));
    for (const auto& [w, g] : df.terms()) rhs[alpha * n + w[0]] = g;
  }

  HamiltonianResult res;
  res.degree_bound = std::max(f.f0.degree(), f.f1.degree());
  for (const auto& ell : nullspace(transpose(m), 2 * n)) {
    SuperFunction obstruction(c);
    for (std::size_t r = 0; r < 2 * n; ++r)
      if (!ell[r].is_zero()) obstruction += ell[r] * rhs[r];
    if (!obstruction.is_zero()) {
      res.status = Membership::NotMember;
      res.reason = "compatibility condition violated: " + obstruction.to_string() + " != 0";
      return res;
    }
  }
  std::map<Mono, std::vector<Gauss>> by_mono;
  for (std::size_t r = 0; r < 2 * n; ++r)
    for (const auto& [mono, v] : rhs[r].terms()) {
      auto& col = by_mono.try_emplace(mono, std::vector<Gauss>(2 * n)).first->second;
      col[r] = v;
    }
  VectorField x(c);
  for (const auto& [mono, col] : by_mono) {
    auto sol = solve(m, col, n);
    if (!sol) throw std::logic_error("pointwise system inconsistent after compatibility check");
    for (std::size_t z = 0; z < n; ++z)
      if (!(*sol)[z].is_zero()) x[z].add_term(mono, (*sol)[z]);
  }
  res.status = Membership::Member;
  res.field = std::move(x);
  res.reason = "pointwise linear system (constant form)";
  return res;
}

}  // namespace detail

/// Solves i_X omega-bar = df. With constant scalar coefficients the answer is
/// definitive; otherwise a polynomial ansatz of total even degree
/// <= ansatz_degree is used (default: deg f + 1).
inline HamiltonianResult hamiltonian_field(const CFunction& f, const KForm& omega, int ansatz_degree = -1) {
  if (omega.degree() != 2) throw FormError("hamiltonian_field expects a 2-form");
  const ChartPtr& c = omega.chart();
  if (f.chart()) require_same_chart(c, f.chart());
  CFunction ff{f.f0.chart() ? f.f0 : SuperFunction(c), f.f1.chart() ? f.f1 : SuperFunction(c)};
  CKForm cw = double_form(omega);
  if (detail::has_scalar_coefficients(omega)) return detail::hamiltonian_constant(ff, cw);

  const std::size_t n = c->dim();
  const int deg_f = std::max({ff.f0.degree(), ff.f1.degree(), 0});
  const int bound = ansatz_degree >= 0 ? ansatz_degree : deg_f + 1;

  Mask gens = ff.f0.generator_support() | ff.f1.generator_support();
  for (int alpha = 0; alpha < 2; ++alpha)
    for (const auto& [w, g] : cw.component(alpha).terms()) gens |= g.generator_support();
  Mask odd_coords = 0;
  for (std::size_t z = c->p(); z < n; ++z) odd_coords |= c->odd_bit(z);

  std::vector<std::vector<int>> exps;
  std::vector<int> cur;
  detail::exponent_vectors(c->p(), bound, cur, exps);
  std::vector<Mono> ansatz;
  for (const auto& e : exps)
    for (Mask g : detail::submasks(gens))
      for (Mask o : detail::submasks(odd_coords)) ansatz.push_back(Mono{e, g | o});

  std::vector<CKForm> basis;
  basis.reserve(n);
  for (std::size_t z = 0; z < n; ++z)
    basis.push_back({contract_coordinate(z, cw.part0), contract_coordinate(z, cw.part1)});

  // rows keyed by (alpha, differential index, monomial)
  std::map<std::tuple<int, int, Mono>, std::size_t> row_of;
  auto row_index = [&](int alpha, int b, const Mono& m) {
    auto key = std::make_tuple(alpha, b, m);
    auto it = row_of.find(key);
    if (it == row_of.end()) it = row_of.emplace(key, row_of.size()).first;
    return it->second;
  };
  std::vector<SparseRow<Gauss>> cols(n * ansatz.size());
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t k = 0; k < ansatz.size(); ++k) {
      SuperFunction mono(c);
      mono.add_term(ansatz[k], Gauss(1));
      auto& col = cols[z * ansatz.size() + k];
      for (int alpha = 0; alpha < 2; ++alpha)
        for (const auto& [w, g] : basis[z].component(alpha).terms())
        {
          const SuperFunction t = mono * g;
          for (const auto& [m, v] : t.terms()) col.emplace_back(row_index(alpha, w[0], m), v);
        }
    }
  std::map<std::size_t, Gauss> rhs;
  for (int alpha = 0; alpha < 2; ++alpha) {
    const KForm df = ext_d(ff.component(alpha));
    for (const auto& [w, g] : df.terms())
      for (const auto& [m, v] : g.terms()) rhs[row_index(alpha, w[0], m)] += v;
  }

  std::vector<SparseRow<Gauss>> rows(row_of.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, v] : cols[j]) rows[r].emplace_back(j, v);
  Echelon<Gauss> ech(cols.size());
  HamiltonianResult res;
  res.degree_bound = bound;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto it = rhs.find(r);
    Gauss b = it == rhs.end() ? Gauss() : it->second;
    if (ech.insert(std::move(rows[r]), b) == Echelon<Gauss>::Insert::Inconsistent) {
      res.status = Membership::Inconclusive;
      res.reason = "no solution with polynomial coefficients of degree <= " + std::to_string(bound);
      return res;
    }
  }
  auto sol = ech.particular_solution();
  VectorField x(c);
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t k = 0; k < ansatz.size(); ++k)
      if (!sol[z * ansatz.size() + k].is_zero()) x[z].add_term(ansatz[k], sol[z * ansatz.size() + k]);
  res.status = Membership::Member;
  res.field = std::move(x);
  res.reason = "polynomial ansatz of degree <= " + std::to_string(bound);
  return res;
}

inline VectorField require_hamiltonian(const CFunction& f, const KForm& omega, int ansatz_degree = -1) {
  auto r = hamiltonian_field(f, omega, ansatz_degree);
  if (r.status != Membership::Member)
    throw NotInPoissonAlgebra("function " + f.to_string() + " is not in the Poisson algebra (" +
                              r.reason + ")");
  return *r.field;
}

/// {f, g} = X_f g, componentwise.
inline CFunction poisson_bracket(const CFunction& f, const CFunction& g, const KForm& omega) {
  return require_hamiltonian(f, omega).apply(g);
}

/// {f, g} = i_{X_f} i_{X_g} omega-bar, as C-valued function.
inline CFunction poisson_bracket_by_contraction(const VectorField& xf, const VectorField& xg,
                                                const KForm& omega) {
  CKForm cw = double_form(omega);
  CKForm one = contract(xg, cw);
  CKForm zero = contract(xf, one);
  return {zero.part0.as_function(), zero.part1.as_function()};
}

/// Pointwise Darboux normal form of a constant homogeneous 2-form.
///
/// `basis` has one column per new coordinate (old = basis * new); column c is
/// additionally scaled by sqrt(scale[c]) (scale 1 means no scaling).
/// New coordinates: even case x1..xk, y1..yk, xi1..xiq; odd case x1..xp, xi1..xip.
struct DarbouxResult {
  bool even = true;
  int k = 0;
  int ell = 0;
  std::vector<int> parities;
  Matrix<Rational> basis;
  std::vector<Rational> scale;
  Matrix<Rational> canonical_gram;
  ChartPtr chart;
  KForm canonical;

  /// Checks sqrt(s_c s_d) (P^T G P)[c][d] == canonical_gram[c][d] exactly.
  [[nodiscard]] bool verify(const Matrix<Rational>& gram) const {
    auto t = multiply(multiply(transpose(basis), gram), basis);
    for (std::size_t c = 0; c < t.size(); ++c)
      for (std::size_t d = 0; d < t.size(); ++d) {
        const Rational& target = canonical_gram[c][d];
        if (scale[c] == 1 && scale[d] == 1) {
          if (t[c][d] != target) return false;
        } else if (c != d) {
          if (!is_zero(t[c][d]) || !is_zero(target)) return false;
        } else if (scale[c] * t[c][d] != target) {
          return false;
        }
      }
    return true;
  }
};

/// Gram matrix G[a][b] = i_{d/dz_a} i_{d/dz_b} omega of a constant-coefficient 2-form.
inline Matrix<Rational> gram_matrix(const KForm& omega) {
  if (!detail::has_scalar_coefficients(omega)) throw NotSymplectic("darboux needs constant real coefficients");
  const std::size_t n = omega.chart()->dim();
  auto g = zeros<Rational>(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      SuperFunction v = contract_coordinate(a, contract_coordinate(b, omega)).as_function();
      if (v.is_zero()) continue;
      Gauss s = v.terms().begin()->second;
      if (!s.is_real()) throw NotSymplectic("darboux needs real coefficients");
      g[a][b] = s.re;
    }
  }
  return g;
}

namespace detail {

inline Rational bilinear(const Matrix<Rational>& g, const std::vector<Rational>& a,
                         const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!is_zero(b[j])) s += a[i] * g[i][j] * b[j];
  }
  return s;
}

inline bool is_zero_vec(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return is_zero(r); });
}

/// sqrt(x) when x is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  Integer n = x.get_num(), d = x.get_den(), rn, rd;
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

inline std::vector<Rational> axpy(const std::vector<Rational>& w, const Rational& a,
                                  const std::vector<Rational>& u) {
  std::vector<Rational> r = w;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= a * u[i];
  return r;
}

}  // namespace detail

inline DarbouxResult darboux_normal_form(const Matrix<Rational>& gram, const std::vector<int>& parities) {
  const std::size_t n = parities.size();
  if (gram.size() != n) throw NotSymplectic("gram matrix size mismatch");
  std::vector<std::size_t> ev, od;
  for (std::size_t a = 0; a < n; ++a) (parities[a] ? od : ev).push_back(a);
  bool has_even_part = false, has_odd_part = false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!is_zero(gram[a][b])) (parities[a] == parities[b] ? has_even_part : has_odd_part) = true;
  if (has_even_part && has_odd_part)
    throw NotSymplectic("mixed form: no Darboux normal form for inhomogeneous forms");

  DarbouxResult r;
  r.even = !has_odd_part;
  const std::size_t p = ev.size(), q = od.size();
  r.basis = zeros<Rational>(n, n);
  r.scale.assign(n, Rational(1));
  r.canonical_gram = zeros<Rational>(n, n);
  auto unit = [&](std::size_t a) {
    std::vector<Rational> v(n, Rational(0));
    v[a] = 1;
    return v;
  };
  std::vector<std::string> even_names, odd_names;

  if (r.even) {
    if (p % 2) throw NotSymplectic("even symplectic form needs an even number of even coordinates");
    // symplectic Gram-Schmidt on the even block
    std::vector<std::vector<Rational>> rest;
    for (auto a : ev) rest.push_back(unit(a));
    std::vector<std::vector<Rational>> us, vs;
    while (true) {
      std::size_t iu = 0, iv = 0;
      bool found = false;
      for (std::size_t i = 0; i < rest.size() && !found; ++i)
        for (std::size_t j = 0; j < rest.size() && !found; ++j)
          if (!is_zero(detail::bilinear(gram, rest[i], rest[j]))) {
            iu = i;
            iv = j;
            found = true;
          }
      if (!found) break;
      auto u = rest[iu];
      Rational b = detail::bilinear(gram, u, rest[iv]);
      std::vector<Rational> v = rest[iv];
      for (auto& e : v) e *= -1 / b;  // B(u, v) = -1
      std::vector<std::vector<Rational>> next;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (i == iu || i == iv) continue;
        auto w = rest[i];
        Rational buw = detail::bilinear(gram, u, w), bvw = detail::bilinear(gram, v, w);
        w = detail::axpy(w, bvw, u);
        w = detail::axpy(w, -buw, v);
        if (!detail::is_zero_vec(w)) next.push_back(std::move(w));
      }
      us.push_back(std::move(u));
      vs.push_back(std::move(v));
      rest = std::move(next);
    }
    if (2 * us.size() != p) throw NotSymplectic("even block is degenerate");
    r.k = static_cast<int>(us.size());
    for (int i = 0; i < r.k; ++i) {
      for (std::size_t a = 0; a < n; ++a) {
        r.basis[a][i] = us[i][a];
        r.basis[a][r.k + i] = vs[i][a];
      }
      r.canonical_gram[i][r.k + i] = -1;
      r.canonical_gram[r.k + i][i] = 1;
      even_names.push_back("x" + std::to_string(i + 1));
    }
    for (int i = 0; i < r.k; ++i) even_names.push_back("y" + std::to_string(i + 1));

    // congruence diagonalization of the symmetric odd block
    std::vector<std::vector<Rational>> rest_o;
    for (auto a : od) rest_o.push_back(unit(a));
    std::vector<std::pair<std::vector<Rational>, Rational>> diag;
    while (!rest_o.empty()) {
      std::size_t pick = rest_o.size();
      for (std::size_t i = 0; i < rest_o.size(); ++i)
        if (!is_zero(detail::bilinear(gram, rest_o[i], rest_o[i]))) {
          pick = i;
          break;
        }
      if (pick == rest_o.size()) {
        bool merged = false;
        for (std::size_t i = 0; i < rest_o.size() && !merged; ++i)
          for (std::size_t j = i + 1; j < rest_o.size() && !merged; ++j)
            if (!is_zero(detail::bilinear(gram, rest_o[i], rest_o[j]))) {
              for (std::size_t a = 0; a < n; ++a) rest_o[i][a] += rest_o[j][a];
              pick = i;
              merged = true;
            }
        if (!merged) break;
      }
      auto u = rest_o[pick];
      Rational d = detail::bilinear(gram, u, u);
      std::vector<std::vector<Rational>> next;
      for (std::size_t i = 0; i < rest_o.size(); ++i) {
        if (i == pick) continue;
        auto w = detail::axpy(rest_o[i], detail::bilinear(gram, u, rest_o[i]) / d, u);
        if (!detail::is_zero_vec(w)) next.push_back(std::move(w));
      }
      diag.emplace_back(std::move(u), d);
      rest_o = std::move(next);
    }
    if (diag.size() != q) throw NotSymplectic("odd block is degenerate");
    std::stable_partition(diag.begin(), diag.end(), [](const auto& e) { return sgn(e.second) > 0; });
    for (std::size_t i = 0; i < q; ++i) {
      auto [u, d] = diag[i];
      const std::size_t col = p + i;
      if (sgn(d) > 0) ++r.ell;
      Rational s = Rational(2) / abs(d);  // sqrt(s)^2 * |d| = 2
      if (auto root = detail::exact_sqrt(s)) {
        for (auto& e : u) e *= *root;
        s = 1;
      }
      for (std::size_t a = 0; a < n; ++a) r.basis[a][col] = u[a];
      r.scale[col] = s;
      r.canonical_gram[col][col] = sgn(d) > 0 ? 2 : -2;
      odd_names.push_back("xi" + std::to_string(i + 1));
    }
  } else {
    if (p != q) throw NotSymplectic("odd symplectic form needs as many even as odd coordinates");
    auto b = zeros<Rational>(p, q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) b[i][j] = gram[ev[i]][od[j]];
    auto binv = inverse(b);
    if (!binv) throw NotSymplectic("odd pairing is degenerate");
    for (std::size_t i = 0; i < p; ++i) {
      r.basis[ev[i]][i] = 1;
      for (std::size_t j = 0; j < q; ++j) r.basis[od[j]][p + i] = -(*binv)[j][i];
      r.canonical_gram[i][p + i] = -1;
      r.canonical_gram[p + i][i] = 1;
      even_names.push_back("x" + std::to_string(i + 1));
      odd_names.push_back("xi" + std::to_string(i + 1));
    }
    r.k = static_cast<int>(p);
  }
  r.parities.assign(n, 0);
  for (std::size_t i = p; i < n; ++i) r.parities[i] = 1;
  r.chart = make_chart("darboux", even_names, odd_names, 0);
  r.canonical = KForm(r.chart, 2);
  const auto one = SuperFunction::constant(r.chart, Gauss(1));
  if (r.even) {
    for (int i = 0; i < r.k; ++i) r.canonical.add_term({i, r.k + i}, one);
    for (std::size_t i = 0; i < q; ++i)
      r.canonical.add_term({static_cast<int>(p + i), static_cast<int>(p + i)},
                           static_cast<int>(i) < r.ell ? one : -one);
  } else {
    for (std::size_t i = 0; i < p; ++i) r.canonical.add_term({static_cast<int>(i), static_cast<int>(p + i)}, one);
  }
  return r;
}

/// Darboux normal form of a constant-coefficient 2-form on its chart.
inline DarbouxResult darboux_normal_form(const KForm& omega) {
  std::vector<int> par;
  for (std::size_t z = 0; z < omega.chart()->dim(); ++z) par.push_back(omega.chart()->parity(z));
  return darboux_normal_form(gram_matrix(omega), par);
}

}  // namespace ssp
