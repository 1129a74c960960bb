#pragma once

#include "supersymp/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ssp {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
using SparseRow = std::vector<std::pair<std::size_t, F>>;

namespace detail {

template <class F>
SparseRow<F> axpy(const SparseRow<F>& a, const F& factor, const SparseRow<F>& b) {
  // a - factor * b, both sorted by column
  SparseRow<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -(factor * b[j].second));
      ++j;
    } else {
      F v = a[i].second - factor * b[j].second;
      if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Incremental row echelon form over a field, with one right-hand side.
template <class F>
class Echelon {
 public:
  enum class Insert { NewPivot, Redundant, Inconsistent };

  explicit Echelon(std::size_t ncols) : ncols_(ncols) {}

  [[nodiscard]] std::size_t cols() const { return ncols_; }
  [[nodiscard]] std::size_t rank() const { return pivots_.size(); }
  [[nodiscard]] bool consistent() const { return consistent_; }

  /// Row entries need not be sorted; zero entries are dropped.
  Insert insert(SparseRow<F> row, F rhs = F(0)) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow<F> clean;
    for (auto& e : row) {
      if (e.first >= ncols_) throw std::out_of_range("echelon column");
      if (!clean.empty() && clean.back().first == e.first) {
        clean.back().second += e.second;
        if (is_zero(clean.back().second)) clean.pop_back();
      } else if (!is_zero(e.second)) {
        clean.push_back(std::move(e));
      }
    }
    row = std::move(clean);
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) break;
      F factor = row.front().second;
      row = detail::axpy(row, factor, it->second.first);
      rhs -= factor * it->second.second;
    }
    if (row.empty()) {
      if (is_zero(rhs)) return Insert::Redundant;
      consistent_ = false;
      return Insert::Inconsistent;
    }
    F lead = row.front().second;
    for (auto& e : row) e.second /= lead;
    rhs /= lead;
    std::size_t col = row.front().first;
    pivots_.emplace(col, std::make_pair(std::move(row), std::move(rhs)));
    return Insert::NewPivot;
  }

  [[nodiscard]] bool is_pivot(std::size_t col) const { return pivots_.count(col) != 0; }

  /// Solution with all free variables set to zero (meaningful when consistent).
  [[nodiscard]] std::vector<F> particular_solution() const {
    std::vector<F> x(ncols_, F(0));
    back_substitute(x, true);
    return x;
  }

  /// Basis of the solution space of the homogeneous system.
  [[nodiscard]] std::vector<std::vector<F>> nullspace() const {
    std::vector<std::vector<F>> basis;
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (is_pivot(f)) continue;
      std::vector<F> x(ncols_, F(0));
      x[f] = F(1);
      back_substitute(x, false);
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  void back_substitute(std::vector<F>& x, bool with_rhs) const {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto& [row, rhs] = it->second;
      F v = with_rhs ? rhs : F(0);
      for (std::size_t k = 1; k < row.size(); ++k) v -= row[k].second * x[row[k].first];
      x[it->first] = std::move(v);
    }
  }

  std::size_t ncols_;
  std::map<std::size_t, std::pair<SparseRow<F>, F>> pivots_;
  bool consistent_ = true;
};

template <class F>
Matrix<F> zeros(std::size_t rows, std::size_t cols) {
  return Matrix<F>(rows, std::vector<F>(cols, F(0)));
}

template <class F>
Matrix<F> identity(std::size_t n) {
  auto m = zeros<F>(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = F(1);
  return m;
}

template <class F>
std::size_t num_cols(const Matrix<F>& a) {
  return a.empty() ? 0 : a.front().size();
}

template <class F>
Matrix<F> transpose(const Matrix<F>& a) {
  auto t = zeros<F>(num_cols(a), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

template <class F>
Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b) {
  std::size_t n = a.size(), m = num_cols(b), k = b.size();
  auto c = zeros<F>(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

template <class F>
std::vector<F> multiply(const Matrix<F>& a, const std::vector<F>& v) {
  std::vector<F> out(a.size(), F(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

template <class F>
Echelon<F> echelon_of(const Matrix<F>& a, const std::vector<F>* rhs = nullptr) {
  Echelon<F> e(num_cols(a));
  for (std::size_t i = 0; i < a.size(); ++i) {
    SparseRow<F> row;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!is_zero(a[i][j])) row.emplace_back(j, a[i][j]);
    e.insert(std::move(row), rhs ? (*rhs)[i] : F(0));
  }
  return e;
}

template <class F>
std::size_t rank(const Matrix<F>& a) {
  return echelon_of(a).rank();
}

/// Basis of {x : a x = 0}.
template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& a, std::size_t ncols) {
  Echelon<F> e(ncols);
  for (const auto& r : a) {
    SparseRow<F> row;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!is_zero(r[j])) row.emplace_back(j, r[j]);
    e.insert(std::move(row));
  }
  return e.nullspace();
}

template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& a) {
  return nullspace(a, num_cols(a));
}

/// Some x with a x = b, or nullopt.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b,
                                    std::size_t ncols) {
  Echelon<F> e(ncols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    SparseRow<F> row;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!is_zero(a[i][j])) row.emplace_back(j, a[i][j]);
    if (e.insert(std::move(row), b[i]) == Echelon<F>::Insert::Inconsistent) return std::nullopt;
  }
  return e.particular_solution();
}

template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b) {
  return solve(a, b, num_cols(a));
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  std::size_t n = a.size();
  Matrix<F> inv = zeros<F>(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<F> e(n, F(0));
    e[c] = F(1);
    auto x = solve(a, e, n);
    if (!x) return std::nullopt;
    for (std::size_t r = 0; r < n; ++r) inv[r][c] = (*x)[r];
  }
  if (rank(a) != n) return std::nullopt;
  return inv;
}

/// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ... (d_i > 0).
struct SmithForm {
  Matrix<Integer> U, V, D;
  std::size_t rank = 0;
  [[nodiscard]] std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t t = 0; t < rank; ++t) out.push_back(D[t][t]);
    return out;
  }
};

inline SmithForm smith_normal_form(const Matrix<Integer>& a, std::size_t ncols) {
  const std::size_t m = a.size(), n = ncols;
  SmithForm s{identity<Integer>(m), identity<Integer>(n), a, 0};
  auto& D = s.D;
  auto& U = s.U;
  auto& V = s.V;
  if (D.empty()) D = zeros<Integer>(0, n);
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(D[i], D[j]);
    std::swap(U[i], U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& r : D) std::swap(r[i], r[j]);
    for (auto& r : V) std::swap(r[i], r[j]);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& q) {  // row_dst -= q row_src
    for (std::size_t j = 0; j < n; ++j) D[dst][j] -= q * D[src][j];
    for (std::size_t j = 0; j < m; ++j) U[dst][j] -= q * U[src][j];
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < m; ++i) D[i][dst] -= q * D[i][src];
    for (std::size_t i = 0; i < n; ++i) V[i][dst] -= q * V[i][src];
  };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block
    bool found = false;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D[i][j] != 0 && (!found || abs(D[i][j]) < abs(D[bi][bj]))) {
          found = true;
          bi = i;
          bj = j;
        }
    if (!found) break;
    swap_rows(t, bi);
    swap_cols(t, bj);
    for (;;) {
      bool again = false;
      for (std::size_t i = t + 1; i < m && !again; ++i) {
        if (D[i][t] == 0) continue;
        Integer q = D[i][t] / D[t][t];
        add_row(i, t, q);
        if (D[i][t] != 0) {
          swap_rows(i, t);
          again = true;
        }
      }
      if (again) continue;
      for (std::size_t j = t + 1; j < n && !again; ++j) {
        if (D[t][j] == 0) continue;
        Integer q = D[t][j] / D[t][t];
        add_col(j, t, q);
        if (D[t][j] != 0) {
          swap_cols(j, t);
          again = true;
        }
      }
      if (again) continue;
      for (std::size_t i = t + 1; i < m && !again; ++i)
        for (std::size_t j = t + 1; j < n && !again; ++j)
          if (D[i][j] % D[t][t] != 0) {
            add_row(t, i, Integer(-1));
            again = true;
          }
      if (!again) break;
    }
    if (D[t][t] < 0) {
      for (std::size_t j = 0; j < n; ++j) D[t][j] = -D[t][j];
      for (std::size_t j = 0; j < m; ++j) U[t][j] = -U[t][j];
    }
    s.rank = t + 1;
  }
  return s;
}

inline SmithForm smith_normal_form(const Matrix<Integer>& a) {
  return smith_normal_form(a, num_cols(a));
}

inline Rational rational_gcd(const Rational& a, const Rational& b) {
  if (is_zero(a)) return abs(b);
  if (is_zero(b)) return abs(a);
  Integer num, den;
  mpz_gcd(num.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace ssp
