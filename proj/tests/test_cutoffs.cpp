#include <gtest/gtest.h>

#include <random>

#include "circle/cutoffs.hpp"
#include "circle/quadrature.hpp"
#include "oracle_values.hpp"

using namespace circle;

namespace {
const double kLog2 = std::log(2.0);
}

TEST(Cutoffs, PointValues) {
  const auto e0 = CutoffFn::eta0(), e1 = CutoffFn::eta1();
  EXPECT_NEAR(e0(0.5), 4 * kLog2, 1e-15);
  EXPECT_EQ(e0(0.125), 0.0);
  EXPECT_EQ(e1(0.5), 1.0);
  EXPECT_EQ(e1(0.05), 0.0);
  EXPECT_NEAR(e1(0.15), 0.5, 1e-15);
}

TEST(Cutoffs, Eta1Symmetric) {
  const auto e1 = CutoffFn::eta1();
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    ASSERT_NEAR(e1(t), e1(1 - t), 1e-14) << t;
    ASSERT_GE(e1(t), 0.0);
  }
}

TEST(Cutoffs, Eta0NormTable) {
  const auto n = CutoffFn::eta0().norms();
  EXPECT_NEAR(n.l1, 1.0, 1e-14);
  EXPECT_NEAR(n.l1, oracle::kEta0L1, 1e-14);
  EXPECT_NEAR(n.l2sq, oracle::kEta0L2sq, 1e-13);
  EXPECT_NEAR(n.linf, 4 * kLog2, 1e-14);
  EXPECT_NEAR(n.tv1, 8 * kLog2, 1e-14);
  EXPECT_NEAR(n.linf_deriv, 16, 1e-13);
  EXPECT_NEAR(n.tv2, 48, 1e-12);
}

TEST(Cutoffs, Eta1NormTable) {
  const auto n = CutoffFn::eta1().norms();
  EXPECT_NEAR(n.l2sq, 2.0 / 3, 1e-14);
  EXPECT_NEAR(n.l2sq, oracle::kEta1L2sq, 1e-14);
  EXPECT_NEAR(n.l2, std::sqrt(2.0 / 3), 1e-14);
  EXPECT_NEAR(n.linf, 1, 1e-15);
  EXPECT_NEAR(n.l1, oracle::kEta1L1, 1e-14);
  EXPECT_NEAR(n.linf_deriv, 10, 1e-13);
  EXPECT_NEAR(n.tv1, 2, 1e-13);
  EXPECT_NEAR(n.l1_self_deriv, 1, 1e-13);
  EXPECT_NEAR(n.tv2, 40, 1e-12);
  EXPECT_NEAR(n.l1_second_combo, 40, 1e-12);
}

TEST(Cutoffs, IndicatorHasInfiniteSecondVariation) {
  const auto n = CutoffFn::indicator01().norms();
  EXPECT_NEAR(n.l1, 1, 1e-15);
  EXPECT_NEAR(n.tv1, 2, 1e-15);
  EXPECT_TRUE(std::isinf(n.tv2));
}

TEST(Cutoffs, UnboundedSupportRejected) {
  EXPECT_THROW(CutoffFn::custom({{0.0, kInf, PieceKind::Affine, 1, 0}}), std::domain_error);
}

TEST(Cutoffs, FourierAtZeroIsMass) {
  EXPECT_NEAR(std::abs(CutoffFn::eta0().fourier(0) - cplx{1, 0}), 0, 1e-13);
  EXPECT_NEAR(std::abs(CutoffFn::eta1().fourier(0) - cplx{0.7, 0}), 0, 1e-13);
}

TEST(Cutoffs, FourierAgainstOracle) {
  const cplx f0 = CutoffFn::eta0().fourier(100);
  EXPECT_NEAR(f0.real(), oracle::kEta0Fourier100Re, 1e-12);
  EXPECT_NEAR(f0.imag(), oracle::kEta0Fourier100Im, 1e-12);
  EXPECT_LE(std::abs(f0), 8 * kLog2 / (200 * kPi));
  const cplx f1 = CutoffFn::eta1().fourier(3.7);
  EXPECT_NEAR(f1.real(), oracle::kEta1Fourier37Re, 1e-12);
  EXPECT_NEAR(f1.imag(), oracle::kEta1Fourier37Im, 1e-12);
}

TEST(Cutoffs, FourierDecayProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-500, 500);
  for (const auto& eta : {CutoffFn::eta0(), CutoffFn::eta1()}) {
    const auto n = eta.norms();
    for (int i = 0; i < 200; ++i) {
      const double xi = U(rng);
      const double bound = std::min(n.l1, n.tv1 / (2 * kPi * std::fabs(xi)));
      ASSERT_LE(std::abs(eta.fourier(xi)), bound * (1 + 1e-12) + 1e-14) << eta.name() << " " << xi;
    }
  }
}

TEST(Cutoffs, MellinAgainstOracle) {
  const cplx m1 = CutoffFn::eta1().mellin({0.5, 14.134725141734693});
  EXPECT_NEAR(m1.real(), oracle::kEta1MellinRho1Re, 1e-12);
  EXPECT_NEAR(m1.imag(), oracle::kEta1MellinRho1Im, 1e-12);
  const cplx m0 = CutoffFn::eta0().mellin({2, 3});
  EXPECT_NEAR(m0.real(), oracle::kEta0Mellin2p3iRe, 1e-12);
  EXPECT_NEAR(m0.imag(), oracle::kEta0Mellin2p3iIm, 1e-12);
}

TEST(Cutoffs, FactorizationTrivialCases) {
  auto r = eta0_factorization_check(1, 1, 2);
  EXPECT_NEAR(r.lhs, 4 * kLog2, 1e-14);
  EXPECT_NEAR(r.rhs, 4 * kLog2, 1e-14);
  r = eta0_factorization_check(1, 1, 8);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
}

TEST(Cutoffs, FactorizationAgainstQuadrature) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0, 1);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 1e3 + U(rng) * 1e6;
    const double d = 1 + U(rng) * 100;
    const double w = x * (0.25 + 0.75 * U(rng)) / d;
    const auto r = eta0_factorization_check(d, w, x);
    worst = std::max(worst, r.deviation());
    // The W-integral itself, by quadrature in log W over the indicator product.
    const double lo = std::log(w), hi = std::log(2 * w);
    auto g = [&](double u) {
      const double W = std::exp(u);
      return (d >= x / (2 * W) && d <= x / W) ? 4.0 : 0.0;
    };
    const double a = std::max(lo, std::log(x / (2 * d))), b = std::min(hi, std::log(x / d));
    const double q = b > a ? quad::integrate<double>(g, a, b, 1e-14, 1e-12) : 0.0;
    ASSERT_NEAR(q, r.lhs, 1e-10);
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Cutoffs, Eta1SelfConvolution) {
  // The limit is ||eta1||_2^2 = 2/3.
  EXPECT_NEAR(eta1_selfconv(0, 1e12), 2.0 / 3, 1e-10);
  for (double K : {1e2, 1e3, 1e4})
    for (double t = -1; t <= 1; t += 0.125) ASSERT_LE(std::fabs(eta1_selfconv(t, K) - 2.0 / 3), 7 / K) << t << " " << K;
}

TEST(Cutoffs, Eta1SelfConvolutionAgainstQuadrature) {
  const auto e = CutoffFn::eta1();
  const double K = 1e3;
  for (double t = -1; t <= 1; t += 0.05) {
    const double u = t / K;
    auto g = [&](double s) { return e(s) * e(1 - s - u); };
    std::vector<double> cuts = {0.1, 0.2, 0.8, 0.9};
    for (double c : {0.1, 0.2, 0.8, 0.9}) cuts.push_back(1 - u - c);
    std::sort(cuts.begin(), cuts.end());
    double q = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] > cuts[i]) q += quad::integrate<double>(g, cuts[i], cuts[i + 1], 1e-15, 1e-13);
    ASSERT_NEAR(eta1_selfconv(t, K), q, 1e-10) << t;
  }
}
