#pragma once

#include "supersymp/linalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ssp {

struct AlgebraError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Finite-dimensional Lie superalgebra given by structure constants
/// [e_i, e_j] = sum_k c[i][j][k] e_k.
struct SuperLieAlgebra {
  std::vector<int> parity;
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<Rational>>> c;

  SuperLieAlgebra() = default;
  explicit SuperLieAlgebra(std::vector<int> parities) : parity(std::move(parities)) {
    const std::size_t n = parity.size();
    c.assign(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
  }

  [[nodiscard]] std::size_t dim() const { return parity.size(); }

  /// Sets [e_i, e_j] and, by graded antisymmetry, [e_j, e_i].
  void set_bracket(std::size_t i, std::size_t j, const std::vector<Rational>& value) {
    c.at(i).at(j) = value;
    const int s = (parity[i] & parity[j]) ? 1 : -1;
    std::vector<Rational> other(value.size());
    for (std::size_t k = 0; k < value.size(); ++k) other[k] = s * value[k];
    c.at(j).at(i) = other;
  }

  [[nodiscard]] std::vector<Rational> bracket(const std::vector<Rational>& u,
                                              const std::vector<Rational>& v) const {
    std::vector<Rational> out(dim(), Rational(0));
    for (std::size_t i = 0; i < dim(); ++i) {
      if (is_zero(u[i])) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (is_zero(v[j])) continue;
        for (std::size_t k = 0; k < dim(); ++k)
          if (!is_zero(c[i][j][k])) out[k] += u[i] * v[j] * c[i][j][k];
      }
    }
    return out;
  }

  /// Throws AlgebraError when antisymmetry or parity compatibility fails.
  void validate() const {
    const std::size_t n = dim();
    if (c.size() != n) throw AlgebraError("structure constant shape mismatch");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const int s = (parity[i] & parity[j]) ? 1 : -1;
          if (c[i][j][k] != s * c[j][i][k])
            throw AlgebraError("graded antisymmetry fails for [" + names[i] + "," + names[j] + "]");
          if (!is_zero(c[i][j][k]) && ((parity[i] + parity[j]) & 1) != parity[k])
            throw AlgebraError("bracket [" + names[i] + "," + names[j] + "] has the wrong parity");
        }
  }
};

struct JacobiReport {
  bool ok = true;
  std::size_t a = 0, b = 0, c = 0;
  std::vector<Rational> value;
};

/// (-1)^{ac}[a,[b,c]] + (-1)^{ba}[b,[c,a]] + (-1)^{cb}[c,[a,b]] = 0 on basis triples.
inline JacobiReport jacobi_check(const SuperLieAlgebra& g) {
  const std::size_t n = g.dim();
  auto unit = [&](std::size_t i) {
    std::vector<Rational> v(n, Rational(0));
    v[i] = 1;
    return v;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        auto term = [&](std::size_t x, std::size_t y, std::size_t z) {
          auto inner = g.c[y][z];
          auto outer = g.bracket(unit(x), inner);
          if (g.parity[x] & g.parity[z]) {
            for (auto& e : outer) e = -e;
          }
          return outer;
        };
        auto t1 = term(a, b, c), t2 = term(b, c, a), t3 = term(c, a, b);
        std::vector<Rational> sum(n);
        bool zero = true;
        for (std::size_t k = 0; k < n; ++k) {
          sum[k] = t1[k] + t2[k] + t3[k];
          if (!is_zero(sum[k])) zero = false;
        }
        if (!zero) return {false, a, b, c, sum};
      }
  return {};
}

/// Graded skew-symmetric even C-valued k-cochain. Values are stored on sorted
/// index multisets (repeats only for odd indices); the stored number is the
/// c_alpha coordinate with alpha = sum of parities mod 2.
struct CECochain {
  int degree = 0;
  std::vector<int> parity;
  std::map<std::vector<int>, Rational> values;

  CECochain() = default;
  CECochain(int k, std::vector<int> parities) : degree(k), parity(std::move(parities)) {}

  /// Sorts an argument tuple. Returns 0 when the value vanishes identically.
  [[nodiscard]] int normalize(std::vector<int>& idx) const {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
      for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
        std::swap(idx[j - 1], idx[j]);
        if (!(parity[idx[j - 1]] & parity[idx[j]])) sign = -sign;
      }
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (idx[i] == idx[i - 1] && parity[idx[i]] == 0) return 0;
    return sign;
  }

  [[nodiscard]] int component(const std::vector<int>& idx) const {
    int a = 0;
    for (int i : idx) a += parity[i];
    return a & 1;
  }

  [[nodiscard]] Rational eval(std::vector<int> idx) const {
    if (static_cast<int>(idx.size()) != degree) throw AlgebraError("cochain arity mismatch");
    int s = normalize(idx);
    if (s == 0) return Rational(0);
    auto it = values.find(idx);
    if (it == values.end()) return Rational(0);
    return s * it->second;
  }

  /// Pair (c0, c1) coordinates of the value.
  [[nodiscard]] std::pair<Rational, Rational> eval_pair(const std::vector<int>& idx) const {
    Rational v = eval(idx);
    return component(idx) ? std::make_pair(Rational(0), v) : std::make_pair(v, Rational(0));
  }

  /// Sets the value on the given arguments (any order).
  void set(std::vector<int> idx, const Rational& v) {
    if (static_cast<int>(idx.size()) != degree) throw AlgebraError("cochain arity mismatch");
    int s = normalize(idx);
    if (s == 0) {
      if (!ssp::is_zero(v)) throw AlgebraError("nonzero value on a repeated even argument");
      return;
    }
    if (ssp::is_zero(v))
      values.erase(idx);
    else
      values[idx] = s * v;
  }

  [[nodiscard]] bool is_zero() const { return values.empty(); }

  friend bool operator==(const CECochain& a, const CECochain& b) {
    return a.degree == b.degree && a.values == b.values;
  }
  friend CECochain operator-(const CECochain& a, const CECochain& b) {
    CECochain r = a;
    for (const auto& [k, v] : b.values) r.set(k, r.eval(k) - v);
    return r;
  }
  friend CECochain operator+(const CECochain& a, const CECochain& b) {
    CECochain r = a;
    for (const auto& [k, v] : b.values) r.set(k, r.eval(k) + v);
    return r;
  }
};

/// Sorted multisets of size k with no repeated even index.
inline std::vector<std::vector<int>> cochain_basis(const std::vector<int>& parity, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  const int n = static_cast<int>(parity.size());
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, parity[i] ? i : i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<Rational> to_vector(const CECochain& c, const std::vector<std::vector<int>>& basis) {
  std::vector<Rational> v(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) v[i] = c.eval(basis[i]);
  return v;
}

inline CECochain from_vector(int k, const std::vector<int>& parity, const std::vector<std::vector<int>>& basis,
                             const std::vector<Rational>& v) {
  CECochain c(k, parity);
  for (std::size_t i = 0; i < basis.size(); ++i) c.set(basis[i], v[i]);
  return c;
}

namespace detail {

/// Calls fn(args', coef) for every term of
/// (dc)(v_0..v_k) = (-1)^k sum_{i<j} (-1)^{j + sum_{i<p<j} e_p e_j} c(.., [v_i, v_j] (slot i), .., v_j omitted, ..).
template <class Fn>
void coboundary_terms(const SuperLieAlgebra& g, const std::vector<int>& args, Fn&& fn) {
  const int k = static_cast<int>(args.size()) - 1;
  for (int i = 0; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      int expo = j + k;
      for (int p = i + 1; p < j; ++p) expo += g.parity[args[p]] * g.parity[args[j]];
      const auto& br = g.c[args[i]][args[j]];
      for (std::size_t m = 0; m < g.dim(); ++m) {
        if (is_zero(br[m])) continue;
        std::vector<int> rest;
        for (int t = 0; t <= k; ++t) {
          if (t == j) continue;
          rest.push_back(t == i ? static_cast<int>(m) : args[t]);
        }
        fn(rest, (expo & 1) ? Rational(-br[m]) : br[m]);
      }
    }
}

}  // namespace detail

inline CECochain ce_coboundary(const CECochain& c, const SuperLieAlgebra& g) {
  if (c.parity != g.parity) throw AlgebraError("cochain and algebra parities differ");
  CECochain r(c.degree + 1, g.parity);
  for (const auto& args : cochain_basis(g.parity, c.degree + 1)) {
    Rational total(0);
    detail::coboundary_terms(g, args, [&](const std::vector<int>& rest, const Rational& coef) {
      total += coef * c.eval(rest);
    });
    r.set(args, total);
  }
  return r;
}

/// Matrix of d: C^k -> C^{k+1} in the cochain bases.
inline Matrix<Rational> coboundary_matrix(const SuperLieAlgebra& g, int k) {
  auto rows = cochain_basis(g.parity, k + 1);
  auto cols = cochain_basis(g.parity, k);
  std::map<std::vector<int>, std::size_t> col_of;
  for (std::size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = i;
  auto m = zeros<Rational>(rows.size(), cols.size());
  const CECochain shape(k, g.parity);
  for (std::size_t r = 0; r < rows.size(); ++r)
    detail::coboundary_terms(g, rows[r], [&](std::vector<int> rest, const Rational& coef) {
      int sign = shape.normalize(rest);
      if (sign != 0) m[r][col_of.at(rest)] += sign * coef;
    });
  return m;
}

struct H2Result {
  std::size_t dim_z2 = 0, dim_b2 = 0, dim_h2 = 0;
  std::vector<CECochain> representatives;
};

inline H2Result h2(const SuperLieAlgebra& g) {
  auto basis2 = cochain_basis(g.parity, 2);
  auto d1 = coboundary_matrix(g, 1);
  auto d2 = coboundary_matrix(g, 2);
  auto z2 = nullspace(d2, basis2.size());
  H2Result r;
  r.dim_z2 = z2.size();
  Echelon<Rational> span(basis2.size());
  auto insert = [&](const std::vector<Rational>& v) {
    SparseRow<Rational> row;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!is_zero(v[i])) row.emplace_back(i, v[i]);
    return span.insert(std::move(row));
  };
  for (const auto& col : transpose(d1))
    if (insert(col) == Echelon<Rational>::Insert::NewPivot) ++r.dim_b2;
  for (const auto& z : z2)
    if (insert(z) == Echelon<Rational>::Insert::NewPivot)
      r.representatives.push_back(from_vector(2, g.parity, basis2, z));
  r.dim_h2 = r.representatives.size();
  return r;
}

/// Bracket on g x C: [(v,e),(w,f)] = ([v,w], Omega(v,w)); c0 even, c1 odd appended.
inline SuperLieAlgebra central_extension(const SuperLieAlgebra& g, const CECochain& omega) {
  if (omega.degree != 2) throw AlgebraError("central extension needs a 2-cochain");
  const std::size_t n = g.dim();
  std::vector<int> par = g.parity;
  par.push_back(0);
  par.push_back(1);
  SuperLieAlgebra e(par);
  for (std::size_t i = 0; i < n; ++i) e.names[i] = g.names[i];
  e.names[n] = "c0";
  e.names[n + 1] = "c1";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) e.c[i][j][k] = g.c[i][j][k];
      const int alpha = (g.parity[i] + g.parity[j]) & 1;
      e.c[i][j][n + alpha] = omega.eval({static_cast<int>(i), static_cast<int>(j)});
    }
  return e;
}

/// F with Omega1 - Omega2 = dF, if any.
inline std::optional<CECochain> extension_equivalent(const CECochain& omega1, const CECochain& omega2,
                                                     const SuperLieAlgebra& g) {
  auto basis1 = cochain_basis(g.parity, 1);
  auto basis2 = cochain_basis(g.parity, 2);
  auto d1 = coboundary_matrix(g, 1);
  auto diff = to_vector(omega1 - omega2, basis2);
  auto sol = solve(d1, diff, basis1.size());
  if (!sol) return std::nullopt;
  return from_vector(1, g.parity, basis1, *sol);
}

/// omega[mu](v, w) = <[v, w], mu>, i.e. the coboundary of mu seen as a 1-cochain.
inline CECochain pullback_class(const SuperLieAlgebra& g, const std::vector<Rational>& mu) {
  CECochain m(1, g.parity);
  for (std::size_t k = 0; k < g.dim(); ++k) m.set({static_cast<int>(k)}, mu.at(k));
  return ce_coboundary(m, g);
}

/// 1-cochain F = mu - mu2 with pullback_class(mu) - pullback_class(mu2) = dF.
inline CECochain class_difference(const SuperLieAlgebra& g, const std::vector<Rational>& mu,
                                  const std::vector<Rational>& mu2) {
  CECochain f(1, g.parity);
  for (std::size_t k = 0; k < g.dim(); ++k) f.set({static_cast<int>(k)}, mu.at(k) - mu2.at(k));
  return f;
}

/// Structure constants of a graded matrix algebra spanned by `basis` (closed
/// under the supercommutator). Row/column index a is odd when a >= m.
inline SuperLieAlgebra matrix_superalgebra(std::size_t m, const std::vector<Matrix<Rational>>& basis,
                                           const std::vector<std::string>& names = {}) {
  const std::size_t n = basis.size();
  if (n == 0) return SuperLieAlgebra(std::vector<int>{});
  const std::size_t size = basis[0].size();
  auto block_parity = [&](std::size_t a) { return a >= m ? 1 : 0; };
  std::vector<int> par;
  for (const auto& b : basis) {
    int p = -1;
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t s = 0; s < size; ++s)
        if (!is_zero(b[r][s])) {
          int q = block_parity(r) ^ block_parity(s);
          if (p == -1) p = q;
          if (p != q) throw AlgebraError("basis matrix is not homogeneous");
        }
    par.push_back(p < 0 ? 0 : p);
  }
  auto flat = zeros<Rational>(size * size, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t s = 0; s < size; ++s) flat[r * size + s][k] = basis[k][r][s];
  SuperLieAlgebra g(par);
  if (!names.empty()) g.names = names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto ab = multiply(basis[i], basis[j]);
      auto ba = multiply(basis[j], basis[i]);
      const int s = (par[i] & par[j]) ? -1 : 1;
      std::vector<Rational> target(size * size);
      for (std::size_t r = 0; r < size; ++r)
        for (std::size_t t = 0; t < size; ++t) target[r * size + t] = ab[r][t] - s * ba[r][t];
      auto coords = solve(flat, target, n);
      if (!coords) throw AlgebraError("basis is not closed under the supercommutator");
      g.c[i][j] = *coords;
    }
  return g;
}

/// gl(m|n) with basis E_ab in row-major order.
inline SuperLieAlgebra gl_superalgebra(std::size_t m, std::size_t n) {
  const std::size_t s = m + n;
  std::vector<Matrix<Rational>> basis;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) {
      auto e = zeros<Rational>(s, s);
      e[a][b] = 1;
      basis.push_back(std::move(e));
      names.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
    }
  return matrix_superalgebra(m, basis, names);
}

/// sl(m|n): supertrace-free matrices.
inline SuperLieAlgebra sl_superalgebra(std::size_t m, std::size_t n) {
  const std::size_t s = m + n;
  std::vector<Matrix<Rational>> basis;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) {
      if (a == b) continue;
      auto e = zeros<Rational>(s, s);
      e[a][b] = 1;
      basis.push_back(std::move(e));
    }
  for (std::size_t a = 1; a < s; ++a) {
    auto e = zeros<Rational>(s, s);
    e[0][0] = 1;
    e[a][a] = a < m ? -1 : 1;
    basis.push_back(std::move(e));
  }
  return matrix_superalgebra(m, basis);
}

/// Same algebra in the basis f_a = sum_b t[b][a] e_b (t parity-preserving and invertible).
inline SuperLieAlgebra change_basis(const SuperLieAlgebra& g, const Matrix<Rational>& t) {
  auto tinv = inverse(t);
  if (!tinv) throw AlgebraError("basis change is singular");
  const std::size_t n = g.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!is_zero(t[a][b]) && g.parity[a] != g.parity[b]) throw AlgebraError("basis change mixes parities");
  SuperLieAlgebra h(g.parity);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<Rational> fa(n), fb(n);
      for (std::size_t i = 0; i < n; ++i) {
        fa[i] = t[i][a];
        fb[i] = t[i][b];
      }
      auto br = g.bracket(fa, fb);  // in e-coordinates
      h.c[a][b] = multiply(*tinv, br);
    }
  return h;
}

/// Direct sum of two algebras.
inline SuperLieAlgebra direct_sum(const SuperLieAlgebra& a, const SuperLieAlgebra& b) {
  std::vector<int> par = a.parity;
  par.insert(par.end(), b.parity.begin(), b.parity.end());
  SuperLieAlgebra s(par);
  const std::size_t na = a.dim();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k) s.c[i][j][k] = a.c[i][j][k];
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k) s.c[na + i][na + j][na + k] = b.c[i][j][k];
  return s;
}

}  // namespace ssp
