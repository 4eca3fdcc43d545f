#include <gtest/gtest.h>

#include <random>

#include "circle/vaughan.hpp"

using namespace circle;
using namespace circle::vaughan;

TEST(Vaughan, GWeightValues) {
  EXPECT_EQ(g_weight(1, 40).value, 0.0);
  EXPECT_NEAR(g_weight(101, 40).value, 0.5 * std::log(101.0), 1e-14);
  // 2^6 = 64: only 64 > 40 contributes log 2.
  EXPECT_NEAR(g_weight(64, 40).value, std::log(2.0) - 0.5 * std::log(64.0), 1e-14);
}

TEST(Vaughan, GBound) {
  for (double V : {40.0, 1000.0})
    for (u64 w = 1; w <= 100000; ++w) {
      const double g = g_weight(w, V).value;
      ASSERT_LE(std::fabs(g), 0.5 * std::log(static_cast<double>(w)) + 1e-12) << w << " " << V;
    }
}

TEST(Vaughan, IdentitySmallGrid) {
  for (double U : {10.0, 40.0})
    for (double V : {10.0, 100.0}) {
      const auto r = vaughan_identity_check(20000, U, V);
      ASSERT_LE(r.max_deviation, 1e-9) << U << " " << V << " worst n " << r.worst_n;
      ASSERT_TRUE(r.check.holds());
    }
}

TEST(Vaughan, IdentityRejectsHugeRange) { EXPECT_THROW(vaughan_identity_check(2000000, 10, 10), PreconditionError); }

TEST(Vaughan, DecomposeAtZero) {
  // UV^2 = 64000 < x here: flagged, but the inequality is still evaluated and must hold.
  const auto d = decompose(1e5, 0, {40, 40});
  EXPECT_FALSE(d.check.hypotheses_ok);
  EXPECT_GE(d.check.margin, 0);
  EXPECT_LE(d.identity_residual, 1e-7 * d.lhs);
}

TEST(Vaughan, DecomposeRandomAlphaAndUnimodularPhases) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < 10; ++i) {
    const double a = U(rng);
    const auto d = decompose(3e4, a, {40, 40});
    ASSERT_TRUE(d.check.holds()) << a;
    ASSERT_LE(d.identity_residual, 1e-7 * std::max(1.0, d.lhs)) << a;
    for (const cplx& c : d.c_d) ASSERT_NEAR(std::abs(c), 1.0, 1e-12);
  }
}

TEST(Vaughan, ClassicalTypeIIComparison) {
  const auto d = decompose(1e5, 0.123, {40, 40});
  EXPECT_TRUE(d.classical_check.holds());
}

TEST(Vaughan, HypothesesFlaggedNotJudged) {
  const auto d = decompose(1e4, 0.3, {10, 10});
  EXPECT_FALSE(d.check.hypotheses_ok);
  EXPECT_FALSE(d.check.violated());
}
