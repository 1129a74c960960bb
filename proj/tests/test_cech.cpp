#include "support.hpp"
#include "supersymp/cech.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace ssp;
using namespace ssp::testing;

namespace {

std::vector<Simplex> rp2() {
  return closure({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                  {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
}
std::vector<Simplex> sphere() { return closure({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }
std::vector<Simplex> circle() { return closure({{0, 1}, {1, 2}, {0, 2}}); }
std::vector<Simplex> disk() { return closure({{0, 1, 2}, {0, 2, 3}}); }
std::vector<Simplex> torus() {
  // 7-vertex torus.
  std::vector<Simplex> t;
  for (int i = 0; i < 7; ++i) {
    t.push_back({i, (i + 1) % 7, (i + 3) % 7});
    t.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return closure(t);
}

int components(const NerveComplex& n) {
  const auto& verts = n.of_dim(0);
  std::vector<std::size_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : n.of_dim(1)) parent[root(*n.find({e[0]}))] = root(*n.find({e[1]}));
  int c = 0;
  for (std::size_t v = 0; v < verts.size(); ++v) c += root(v) == v;
  return c;
}

// |H^1(nerve, Z/m)| by enumerating all 1-cochains mod m.
long brute_force_h1(const NerveComplex& n, long m) {
  const auto& edges = n.of_dim(1);
  const auto& tris = n.of_dim(2);
  std::vector<std::vector<std::size_t>> closes(edges.size());  // triangles completed at edge e
  std::vector<std::array<std::size_t, 3>> tri_edges;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& s = tris[t];
    const std::array<std::size_t, 3> es{*n.find({s[1], s[2]}), *n.find({s[0], s[2]}), *n.find({s[0], s[1]})};
    tri_edges.push_back(es);
    closes[*std::max_element(es.begin(), es.end())].push_back(t);
  }
  std::vector<long> c(edges.size(), 0);
  long cocycles = 0;
  auto rec = [&](auto&& self, std::size_t e) -> void {
    if (e == edges.size()) {
      ++cocycles;
      return;
    }
    for (long v = 0; v < m; ++v) {
      c[e] = v;
      bool ok = true;
      for (std::size_t t : closes[e]) {
        const auto& es = tri_edges[t];
        if (((c[es[0]] - c[es[1]] + c[es[2]]) % m + m) % m != 0) ok = false;
      }
      if (ok) self(self, e + 1);
    }
  };
  rec(rec, 0);
  long coboundaries = 1;
  for (std::size_t v = 0; v < n.count(0) - static_cast<std::size_t>(components(n)); ++v) coboundaries *= m;
  return cocycles / coboundaries;
}

long predicted_h1(const PrequantumClassification& c, long m) {
  long r = 1;
  for (std::size_t i = 0; i < c.free_rank; ++i) r *= m;
  for (const auto& t : c.torsion) r *= std::gcd(t.get_si(), m);
  return r;
}

std::vector<Simplex> random_complex(Rng& rng) {
  std::vector<Simplex> tris;
  const int verts = static_cast<int>(uniform(rng, 3, 5));
  for (int a = 0; a < verts; ++a)
    for (int b = a + 1; b < verts; ++b) {
      if (uniform(rng, 0, 2) == 0) tris.push_back({a, b});
      for (int d = b + 1; d < verts; ++d)
        if (uniform(rng, 0, 3) == 0) tris.push_back({a, b, d});
    }
  if (tris.empty()) tris.push_back({0, 1});
  return closure(tris);
}

CechCochain random_cochain(Rng& rng, const NerveComplex& n, int k) {
  CechCochain c(k);
  for (const auto& s : n.of_dim(k)) c.set(s, small_rational(rng));
  return c;
}

}  // namespace

TEST(Cech, NerveConstruction) {
  const auto n = build_nerve(rp2());
  EXPECT_EQ(n.count(0), 6u);
  EXPECT_EQ(n.count(1), 15u);
  EXPECT_EQ(n.count(2), 10u);
  EXPECT_THROW(build_nerve({{0, 1, 2}}), CechError);
  EXPECT_THROW(build_nerve({{0, 0}}), CechError);
  EXPECT_THROW(build_nerve(closure({{0, 1, 2, 3, 4}})), CechError);
}

TEST(Cech, BoundaryOfBoundaryVanishes) {
  for (const auto& cx : {rp2(), sphere(), torus(), closure({{0, 1, 2, 3}})}) {
    const auto n = build_nerve(cx);
    for (int k = 2; k <= n.top_dim(); ++k) {
      const auto dd = multiply(n.boundary(k - 1), n.boundary(k));
      for (const auto& row : dd)
        for (const auto& v : row) EXPECT_EQ(v, 0);
    }
  }
}

TEST(Cech, CochainSkewSymmetry) {
  CechCochain c(2);
  c.set({2, 0, 1}, Rational(5));
  EXPECT_EQ(c.eval({0, 1, 2}), Rational(5));
  EXPECT_EQ(c.eval({1, 0, 2}), Rational(-5));
  EXPECT_EQ(c.eval({0, 0, 2}), Rational(0));
  EXPECT_THROW(c.set({1, 1, 2}, Rational(1)), CechError);
  EXPECT_THROW((void)c.eval({0, 1}), CechError);
}

TEST(Cech, CoboundarySquaredVanishes) {
  Rng rng(81);
  for (const auto& cx : {rp2(), torus(), closure({{0, 1, 2, 3}})}) {
    const auto n = build_nerve(cx);
    for (int k = 0; k + 2 <= n.top_dim(); ++k)
      EXPECT_TRUE(coboundary(coboundary(random_cochain(rng, n, k), n), n).values.empty());
  }
}

TEST(Cech, PotentialsGiveTriangleSums) {
  Rng rng(82);
  const auto n = build_nerve(sphere());
  const auto f = random_cochain(rng, n, 1);
  const auto a = cocycle_from_potentials(f, n);
  for (const auto& s : n.of_dim(2))
    EXPECT_EQ(a.eval(s), f.eval({s[0], s[1]}) + f.eval({s[1], s[2]}) + f.eval({s[2], s[0]}));
}

TEST(Cech, ClassificationMatchesBruteForceCounts) {
  const std::vector<std::pair<std::vector<Simplex>, std::string>> named{
      {rp2(), "Z/2"}, {sphere(), "0"}, {circle(), "Q/Z"}, {disk(), "0"}, {torus(), "(Q/Z)^2"}};
  for (const auto& [cx, text] : named) {
    const auto n = build_nerve(cx);
    const auto c = classify_prequantum(n, Rational(1));
    EXPECT_EQ(c.to_string(), text);
    for (long m : {2L, 3L}) {
      if (n.count(1) > 15 && m > 2) continue;
      EXPECT_EQ(brute_force_h1(n, m), predicted_h1(c, m)) << text << " m=" << m;
    }
  }
}

TEST(Cech, RandomComplexesMatchBruteForce) {
  Rng rng(83);
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = build_nerve(random_complex(rng));
    const auto c = classify_prequantum(n, Rational(2));
    for (long m : {2L, 3L, 4L}) EXPECT_EQ(brute_force_h1(n, m), predicted_h1(c, m));
  }
}

TEST(Cech, ClassificationRendering) {
  EXPECT_EQ(classify_prequantum(build_nerve(circle()), Rational(3)).to_string(), "Q/3Z");
  EXPECT_EQ(classify_prequantum(build_nerve(circle()), Rational(-3)).to_string(), "Q/3Z");
  EXPECT_EQ(classify_prequantum(build_nerve(torus()), make_rational(1, 2)).to_string(), "(Q/1/2Z)^2");
  EXPECT_THROW(classify_prequantum(build_nerve(circle()), Rational(0)), CechError);
}

TEST(Cech, SpherePeriods) {
  const auto n = build_nerve(sphere());
  CechCochain a(2);
  a.set({0, 1, 2}, Rational(3));
  const auto per = period_group(a, n);
  EXPECT_EQ(per.lambda, Rational(3));
  EXPECT_TRUE(prequantum_exists(per, Rational(1)));
  EXPECT_TRUE(prequantum_exists(per, Rational(3)));
  EXPECT_TRUE(prequantum_exists(per, make_rational(3, 2)));
  EXPECT_FALSE(prequantum_exists(per, Rational(2)));
  EXPECT_FALSE(prequantum_exists(per, Rational(6)));
  EXPECT_TRUE(per.contains(Rational(-6)));
  EXPECT_FALSE(per.contains(Rational(1)));
}

TEST(Cech, PeriodsIgnoreCoboundaries) {
  Rng rng(84);
  for (const auto& cx : {sphere(), torus(), rp2()}) {
    const auto n = build_nerve(cx);
    for (int trial = 0; trial < 5; ++trial) {
      // A cocycle: coboundary plus a multiple of a fixed class where one exists.
      CechCochain a = coboundary(random_cochain(rng, n, 1), n);
      if (cx == sphere()) a.add({0, 1, 2}, small_rational(rng));
      const auto f = random_cochain(rng, n, 1);
      CechCochain b = a;
      const auto df = coboundary(f, n);
      for (const auto& s : n.of_dim(2)) b.add(s, df.eval(s));
      EXPECT_EQ(period_group(a, n).lambda, period_group(b, n).lambda);
    }
  }
}

TEST(Cech, NonCocyclesRejected) {
  const auto n = build_nerve(closure({{0, 1, 2, 3}}));
  CechCochain a(2);
  a.set({0, 1, 2}, Rational(1));
  EXPECT_THROW(period_group(a, n), CechError);
}

TEST(Cech, NormalizationLandsInPeriods) {
  Rng rng(85);
  for (const auto& cx : {sphere(), torus(), rp2(), disk()}) {
    const auto n = build_nerve(cx);
    for (int trial = 0; trial < 5; ++trial) {
      CechCochain a = coboundary(random_cochain(rng, n, 1), n);
      if (cx == sphere()) a.add({0, 1, 2}, Rational(uniform(rng, 1, 4)));
      const auto per = period_group(a, n);
      const auto res = normalize_to_periods(a, n);
      const auto db = coboundary(res.correction, n);
      for (const auto& s : n.of_dim(2)) {
        EXPECT_EQ(res.normalized.eval(s), a.eval(s) - db.eval(s));
        EXPECT_TRUE(per.contains(res.normalized.eval(s)));
      }
    }
  }
}

TEST(Cech, TransitionData) {
  const auto n = build_nerve(sphere());
  CechCochain f(1);
  f.set({0, 1}, make_rational(7, 2));
  f.set({1, 2}, Rational(-1));
  const auto a = cocycle_from_potentials(f, n);
  const auto bad = transition_data(f, a, n, Rational(1));
  EXPECT_FALSE(bad.ok);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_FALSE(is_integer(bad.witness_value));
  const auto good = transition_data(f, a, n, make_rational(1, 2));
  EXPECT_TRUE(good.ok);
  EXPECT_EQ(good.g.eval({0, 1}), Rational(0));
  EXPECT_EQ(good.g.eval({1, 2}), Rational(0));
  const auto dg = coboundary(good.g, n);
  for (const auto& s : n.of_dim(2)) EXPECT_TRUE(is_integer(dg.eval(s) / make_rational(1, 2)));
  EXPECT_THROW(transition_data(f, a, n, Rational(0)), CechError);
}

TEST(Cech, ModRational) {
  EXPECT_EQ(mod_rational(make_rational(7, 2), Rational(1)), make_rational(1, 2));
  EXPECT_EQ(mod_rational(make_rational(-7, 2), Rational(3)), make_rational(5, 2));
  EXPECT_EQ(mod_rational(Rational(5), Rational(-2)), Rational(1));
}
