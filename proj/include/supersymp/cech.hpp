#pragma once

#include "supersymp/linalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssp {

struct CechError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Simplex = std::vector<int>;

inline constexpr int kMaxNerveDim = 3;

/// Finite abstract simplicial complex (nerve of a cover) with its integer chain complex.
struct NerveComplex {
  std::vector<std::vector<Simplex>> simplices;  // by dimension, each sorted
  std::vector<std::map<Simplex, std::size_t>> index;

  [[nodiscard]] int top_dim() const { return static_cast<int>(simplices.size()) - 1; }
  [[nodiscard]] std::size_t count(int k) const {
    return k < 0 || k > top_dim() ? 0 : simplices[static_cast<std::size_t>(k)].size();
  }
  [[nodiscard]] const std::vector<Simplex>& of_dim(int k) const {
    static const std::vector<Simplex> empty;
    return k < 0 || k > top_dim() ? empty : simplices[static_cast<std::size_t>(k)];
  }
  [[nodiscard]] std::optional<std::size_t> find(const Simplex& s) const {
    const int k = static_cast<int>(s.size()) - 1;
    if (k < 0 || k > top_dim()) return std::nullopt;
    auto it = index[static_cast<std::size_t>(k)].find(s);
    if (it == index[static_cast<std::size_t>(k)].end()) return std::nullopt;
    return it->second;
  }

  /// d_k : C_k -> C_{k-1}; rows are (k-1)-simplices, columns k-simplices.
  [[nodiscard]] Matrix<Integer> boundary(int k) const {
    auto m = zeros<Integer>(count(k - 1), count(k));
    if (k <= 0) return m;
    const auto& cols = of_dim(k);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t j = 0; j < cols[c].size(); ++j) {
        Simplex face = cols[c];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        m[*find(face)][c] += (j & 1) ? -1 : 1;
      }
    return m;
  }
};

/// Builds the complex; every face of every listed simplex must be listed too.
inline NerveComplex build_nerve(const std::vector<Simplex>& input) {
  std::set<Simplex> all;
  for (Simplex s : input) {
    std::sort(s.begin(), s.end());
    if (s.empty()) throw CechError("empty simplex");
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw CechError("simplex with repeated vertex");
    if (static_cast<int>(s.size()) - 1 > kMaxNerveDim) throw CechError("simplices above dimension 3 are not supported");
    all.insert(s);
  }
  NerveComplex n;
  for (const auto& s : all) {
    const std::size_t k = s.size() - 1;
    if (n.simplices.size() <= k) n.simplices.resize(k + 1);
    n.simplices[k].push_back(s);
  }
  n.index.resize(n.simplices.size());
  for (std::size_t k = 0; k < n.simplices.size(); ++k)
    for (std::size_t i = 0; i < n.simplices[k].size(); ++i) n.index[k][n.simplices[k][i]] = i;
  for (const auto& s : all)
    for (std::size_t j = 0; s.size() > 1 && j < s.size(); ++j) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
      if (!all.count(face)) {
        std::string txt;
        for (int v : face) txt += (txt.empty() ? "" : " ") + std::to_string(v);
        throw CechError("missing face [" + txt + "]");
      }
    }
  return n;
}

/// All faces of the given simplices.
inline std::vector<Simplex> closure(const std::vector<Simplex>& input) {
  std::set<Simplex> out;
  for (Simplex s : input) {
    std::sort(s.begin(), s.end());
    const std::size_t k = s.size();
    if (k > 30) throw CechError("simplex too large");
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      Simplex f;
      for (std::size_t j = 0; j < k; ++j)
        if (mask & (1u << j)) f.push_back(s[j]);
      out.insert(f);
    }
  }
  return {out.begin(), out.end()};
}

/// Totally skew-symmetric rational cochain, stored on sorted simplices.
struct CechCochain {
  int degree = 0;
  std::map<Simplex, Rational> values;

  CechCochain() = default;
  explicit CechCochain(int k) : degree(k) {}

  static int sort_sign(Simplex& s) {
    int sign = 1;
    for (std::size_t i = 1; i < s.size(); ++i)
      for (std::size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
        std::swap(s[j - 1], s[j]);
        sign = -sign;
      }
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return 0;
    return sign;
  }

  [[nodiscard]] Rational eval(Simplex s) const {
    if (static_cast<int>(s.size()) != degree + 1) throw CechError("cochain arity mismatch");
    int sign = sort_sign(s);
    if (sign == 0) return Rational(0);
    auto it = values.find(s);
    return it == values.end() ? Rational(0) : sign * it->second;
  }
  void set(Simplex s, const Rational& v) {
    if (static_cast<int>(s.size()) != degree + 1) throw CechError("cochain arity mismatch");
    int sign = sort_sign(s);
    if (sign == 0) throw CechError("repeated vertex in cochain argument");
    if (is_zero(v))
      values.erase(s);
    else
      values[s] = sign * v;
  }
  void add(const Simplex& s, const Rational& v) { set(s, eval(s) + v); }

  [[nodiscard]] std::vector<Rational> to_vector(const NerveComplex& n) const {
    for (const auto& [s, v] : values)
      if (!n.find(s)) throw CechError("cochain has a value outside the nerve");
    std::vector<Rational> out;
    for (const auto& s : n.of_dim(degree)) out.push_back(eval(s));
    return out;
  }
  static CechCochain from_vector(const NerveComplex& n, int k, const std::vector<Rational>& v) {
    CechCochain c(k);
    const auto& s = n.of_dim(k);
    for (std::size_t i = 0; i < s.size(); ++i) c.set(s[i], v[i]);
    return c;
  }
  friend bool operator==(const CechCochain& a, const CechCochain& b) {
    return a.degree == b.degree && a.values == b.values;
  }
};

/// (delta f)(i_0..i_{k+1}) = sum_j (-1)^j f(i_0..^i_j..i_{k+1}) on the simplices of the nerve.
inline CechCochain coboundary(const CechCochain& f, const NerveComplex& n) {
  CechCochain r(f.degree + 1);
  for (const auto& s : n.of_dim(f.degree + 1)) {
    Rational v(0);
    for (std::size_t j = 0; j < s.size(); ++j) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
      v += (j & 1) ? Rational(-f.eval(face)) : f.eval(face);
    }
    r.set(s, v);
  }
  return r;
}

/// a_ijk = f_ij + f_jk + f_ki.
inline CechCochain cocycle_from_potentials(const CechCochain& f, const NerveComplex& n) {
  if (f.degree != 1) throw CechError("potentials form a 1-cochain");
  return coboundary(f, n);
}

/// Per = lambda * Z with lambda >= 0.
struct PeriodGroup {
  Rational lambda;
  [[nodiscard]] bool trivial() const { return is_zero(lambda); }
  [[nodiscard]] bool contains(const Rational& v) const {
    if (trivial()) return is_zero(v);
    return is_integer(v / lambda);
  }
  /// Per subset of d Z.
  [[nodiscard]] bool inside(const Rational& d) const {
    if (trivial()) return true;
    if (is_zero(d)) return false;
    return is_integer(lambda / d);
  }
};

/// Integer generators of ker d_2 (2-cycles).
inline std::vector<std::vector<Integer>> cycle_basis(const NerveComplex& n, int k = 2) {
  const auto d = n.boundary(k);
  const std::size_t cols = n.count(k);
  const auto snf = smith_normal_form(d, cols);
  std::vector<std::vector<Integer>> out;
  for (std::size_t t = snf.rank; t < cols; ++t) {
    std::vector<Integer> z(cols);
    for (std::size_t i = 0; i < cols; ++i) z[i] = snf.V[i][t];
    out.push_back(std::move(z));
  }
  return out;
}

inline void require_cocycle(const CechCochain& a, const NerveComplex& n) {
  if (a.degree != 2) throw CechError("expected a 2-cochain");
  (void)a.to_vector(n);
  const CechCochain da = coboundary(a, n);
  if (!da.values.empty()) throw CechError("a is not a cocycle");
}

/// Values of a on the generators of ker d_2; Per is the subgroup they generate.
inline PeriodGroup period_group(const CechCochain& a, const NerveComplex& n) {
  require_cocycle(a, n);
  const auto av = a.to_vector(n);
  PeriodGroup per{Rational(0)};
  for (const auto& z : cycle_basis(n)) {
    Rational v(0);
    for (std::size_t i = 0; i < z.size(); ++i) v += av[i] * Rational(z[i]);
    per.lambda = rational_gcd(per.lambda, v);
  }
  return per;
}

struct Normalization {
  CechCochain correction;  // b with a - delta b valued in Per
  CechCochain normalized;  // a - delta b
};

/// With U d_2 V = D: b = U^T y, y_t = (V^T a)_t / d_t for t < rank, 0 otherwise.
inline Normalization normalize_to_periods(const CechCochain& a, const NerveComplex& n) {
  require_cocycle(a, n);
  const auto av = a.to_vector(n);
  const std::size_t edges = n.count(1), tris = n.count(2);
  const auto snf = smith_normal_form(n.boundary(2), tris);
  std::vector<Rational> y(edges, Rational(0));
  for (std::size_t t = 0; t < snf.rank; ++t) {
    Rational at(0);
    for (std::size_t i = 0; i < tris; ++i) at += Rational(snf.V[i][t]) * av[i];
    y[t] = at / Rational(snf.D[t][t]);
  }
  std::vector<Rational> b(edges, Rational(0));
  for (std::size_t e = 0; e < edges; ++e)
    for (std::size_t t = 0; t < edges; ++t)
      if (!is_zero(y[t]) && snf.U[t][e] != 0) b[e] += Rational(snf.U[t][e]) * y[t];
  Normalization res;
  res.correction = CechCochain::from_vector(n, 1, b);
  const CechCochain db = coboundary(res.correction, n);
  res.normalized = CechCochain(2);
  for (const auto& s : n.of_dim(2)) res.normalized.set(s, a.eval(s) - db.eval(s));
  return res;
}

/// Per(omega) contained in d Z.
inline bool prequantum_exists(const PeriodGroup& per, const Rational& d) { return per.inside(d); }

struct TransitionData {
  CechCochain g;  // f mod d, representatives in [0, |d|)
  bool ok = true;
  std::optional<Simplex> witness;
  Rational witness_value;
};

inline Rational mod_rational(const Rational& v, const Rational& d) {
  if (is_zero(d)) return v;
  const Rational ad = abs(d);
  Rational q = v / ad;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return v - Rational(fl) * ad;
}

/// g_ij = f_ij mod d; the cocycle condition g_ij + g_jk + g_ki = 0 mod d
/// holds iff a_ijk is in d Z on every 2-simplex.
inline TransitionData transition_data(const CechCochain& f, const CechCochain& a, const NerveComplex& n,
                                      const Rational& d) {
  if (f.degree != 1) throw CechError("transition data needs a 1-cochain");
  if (is_zero(d)) throw CechError("d must be nonzero");
  TransitionData t;
  t.g = CechCochain(1);
  for (const auto& e : n.of_dim(1)) t.g.set(e, mod_rational(f.eval(e), d));
  for (const auto& s : n.of_dim(2)) {
    Rational v = a.eval(s);
    if (!is_integer(v / d)) {
      t.ok = false;
      t.witness = s;
      t.witness_value = v;
      break;
    }
  }
  return t;
}

/// H^1(nerve, Q/dZ) = (Q/dZ)^b1 + sum Z/t_i, t_i the invariant factors of d_2 above 1.
struct PrequantumClassification {
  Rational d;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  [[nodiscard]] bool trivial() const { return free_rank == 0 && torsion.empty(); }
  [[nodiscard]] std::string to_string() const {
    if (trivial()) return "0";
    std::string s;
    const std::string unit = "Q/" + (d == 1 ? std::string("") : ssp::to_string(d)) + "Z";
    if (free_rank > 0) s = free_rank == 1 ? unit : "(" + unit + ")^" + std::to_string(free_rank);
    for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
    return s;
  }
};

inline PrequantumClassification classify_prequantum(const NerveComplex& n, const Rational& d) {
  if (is_zero(d)) throw CechError("d must be nonzero");
  PrequantumClassification c;
  c.d = abs(d);
  const auto s1 = smith_normal_form(n.boundary(1), n.count(1));
  const auto s2 = smith_normal_form(n.boundary(2), n.count(2));
  c.free_rank = n.count(1) - s1.rank - s2.rank;
  for (const auto& t : s2.invariant_factors())
    if (t > 1) c.torsion.push_back(t);
  return c;
}

}  // namespace ssp
