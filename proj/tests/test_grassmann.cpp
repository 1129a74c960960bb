#include "support.hpp"

#include <gtest/gtest.h>

using namespace ssp;
using namespace ssp::testing;

namespace {

// Product of two monomials computed by bubble-sorting the concatenated index list.
std::pair<int, std::vector<int>> list_product(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> all = a;
  all.insert(all.end(), b.begin(), b.end());
  int sign = 1;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j + 1 < all.size() - i; ++j)
      if (all[j] > all[j + 1]) {
        std::swap(all[j], all[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i] == all[i - 1]) return {0, {}};
  return {sign, all};
}

std::vector<int> indices(Mask m) {
  std::vector<int> v;
  for (int k = 0; k < 64; ++k)
    if (m & (Mask{1} << k)) v.push_back(k);
  return v;
}

GrassmannNumber oracle_mul(const GrassmannNumber& a, const GrassmannNumber& b) {
  GrassmannNumber r(a.generator_count());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto [s, idx] = list_product(indices(ma), indices(mb));
      if (s == 0) continue;
      Mask m = 0;
      for (int k : idx) m |= Mask{1} << k;
      r.add_term(m, s > 0 ? ca * cb : -(ca * cb));
    }
  return r;
}

}  // namespace

TEST(Grassmann, GeneratorsAnticommute) {
  const auto t1 = GrassmannNumber::generator(4, 1), t2 = GrassmannNumber::generator(4, 2);
  EXPECT_EQ(t1 * t2, -(t2 * t1));
  EXPECT_TRUE((t1 * t1).is_zero());
  EXPECT_EQ((t1 * t2).parity(), 0);
  EXPECT_EQ(t1.parity(), 1);
}

TEST(Grassmann, ProductMatchesIndexListOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(uniform(rng, 0, 6));
    const auto a = random_grassmann(rng, n), b = random_grassmann(rng, n);
    EXPECT_EQ(a * b, oracle_mul(a, b));
  }
}

TEST(Grassmann, RingAxioms) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_grassmann(rng, 5), b = random_grassmann(rng, 5), c = random_grassmann(rng, 5);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) * c, a * c + b * c);
  }
}

TEST(Grassmann, GradedCommutation) {
  // a b = c^{eps(a)}(b) a for homogeneous a.
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int pa = static_cast<int>(uniform(rng, 0, 1));
    const auto a = random_grassmann(rng, 6, pa), b = random_grassmann(rng, 6);
    const GrassmannNumber cb = pa ? b.involution() : b;
    EXPECT_EQ(a * b, cb * a);
  }
}

TEST(Grassmann, ParityDecompositionAndBody) {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_grassmann(rng, 5, -1, 6);
    EXPECT_EQ(a.part(0) + a.part(1), a);
    EXPECT_EQ(a.involution(), a.part(0) - a.part(1));
    EXPECT_EQ(a.body(), a.coefficient(0));
    const auto odd = a.part(1);
    for (const auto& [m, c] : odd.terms()) EXPECT_EQ(popcount(m) % 2, 1);
  }
  EXPECT_EQ(GrassmannNumber(3, Gauss(5)).body(), Gauss(5));
  EXPECT_EQ(GrassmannNumber(3).parity(), 0);
}

TEST(Grassmann, InverseByGeometricSeries) {
  Rng rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = random_grassmann(rng, 5, -1, 6);
    a.add_term(0, Gauss(uniform(rng, 1, 4)));
    if (a.body().is_zero()) continue;
    // a = b (1 + n), a^{-1} = b^{-1} sum_k (-n)^k, with n nilpotent.
    const Gauss b = a.body();
    const GrassmannNumber one(5, Gauss(1));
    const GrassmannNumber n = GrassmannNumber(5, Gauss(1) / b) * a - one;
    GrassmannNumber series = one, power = one;
    for (int k = 1; k <= 5; ++k) {
      power = power * (-n);
      series += power;
    }
    const GrassmannNumber expected = GrassmannNumber(5, Gauss(1) / b) * series;
    EXPECT_EQ(a.inverse(), expected);
    EXPECT_EQ(a * a.inverse(), one);
  }
}

TEST(Grassmann, NilpotentHasNoInverse) {
  EXPECT_THROW((void)GrassmannNumber::generator(3, 2).inverse(), NotInvertible);
}

TEST(Grassmann, MismatchedGeneratorCounts) {
  EXPECT_THROW((void)(GrassmannNumber::generator(3, 1) * GrassmannNumber::generator(4, 1)), DimensionError);
  EXPECT_THROW((void)GrassmannNumber::generator(3, 4), DimensionError);
}

TEST(Grassmann, ZeroGeneratorsIsGaussianField) {
  const GrassmannNumber a(0, Gauss(make_rational(2, 3), Rational(1))), b(0, Gauss(3));
  EXPECT_EQ((a * b).body(), Gauss(Rational(2), Rational(3)));
  EXPECT_TRUE(a.is_scalar());
}

TEST(Grassmann, CanonicalFormDropsZeros) {
  auto a = GrassmannNumber::generator(3, 1);
  a -= GrassmannNumber::generator(3, 1);
  EXPECT_TRUE(a.is_zero());
  EXPECT_TRUE(a.terms().empty());
}

TEST(Grassmann, Rendering) {
  const auto t1 = GrassmannNumber::generator(3, 1), t2 = GrassmannNumber::generator(3, 2);
  EXPECT_EQ((GrassmannNumber(3, Gauss(2)) + Gauss(-1) * t1 * t2).to_string(), "2 - th1*th2");
}
