#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "circle/harness.hpp"
#include "oracle_values.hpp"

using namespace circle;
using namespace circle::harness;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("circle_test_" + name)).string();
}

bool ledger_has(const CaseLedger& L, const std::string& anchor_part, bool pass) {
  for (const auto& e : L.entries)
    if (e.anchor.find(anchor_part) != std::string::npos && e.pass == pass) return true;
  return false;
}

}  // namespace

TEST(Config, RoundTripAndStrictKeys) {
  PipelineConfig c;
  c.x = 100001;
  c.desk = true;
  const auto d = PipelineConfig::from_json(c.to_json());
  EXPECT_EQ(d.x, 100001);
  EXPECT_TRUE(d.desk);
  EXPECT_EQ(d.N0, 4e14);
  EXPECT_THROW(PipelineConfig::from_json(json{{"version", 1}, {"bogus", 3}}), PreconditionError);
  EXPECT_THROW(PipelineConfig::from_json(json{{"version", 2}}), PreconditionError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), PreconditionError);
}

TEST(Threshold, ExactBullets) {
  const auto r = threshold_chain();
  EXPECT_EQ(r.bullet1, "11200000000000000000000");
  EXPECT_EQ(r.bullet3, "8780800000000000000000000000000000000");
  EXPECT_TRUE(r.ledger.all_pass());
}

TEST(Ledger, RecordKeepsWorstMargin) {
  CaseLedger L;
  L.record("g", EntryKind::Printed, "a <= b", mp(1), mp(2), "p1");
  L.record("g", EntryKind::Printed, "a <= b", mp("1.9"), mp(2), "p2");
  L.record("g", EntryKind::Printed, "a <= b", mp("1.5"), mp(2), "p3");
  ASSERT_EQ(L.entries.size(), 1u);
  EXPECT_EQ(L.entries[0].points, 3u);
  EXPECT_EQ(L.entries[0].interval, "p2");
  EXPECT_TRUE(L.all_pass());
  L.record("g", EntryKind::Printed, "a <= b", mp(3), mp(2), "p4");
  EXPECT_FALSE(L.all_pass());
  EXPECT_EQ(L.entries[0].failures, 1u);
  const auto j = to_json(L);
  EXPECT_EQ(j["failures"], 1);
}

TEST(Ledger, SmaeBudgetRepairsHold) {
  const auto L = smae_budget_check();
  // Printed forms that do not hold as stated, next to the repaired forms that do.
  EXPECT_TRUE(ledger_has(L, "1e-10", true));
  EXPECT_TRUE(ledger_has(L, "8.001", true));
  EXPECT_TRUE(ledger_has(L, "7.09", true));
  for (const auto& e : L.entries)
    if (e.kind == EntryKind::Repair) EXPECT_TRUE(e.pass) << e.anchor;
}

TEST(Ledger, CaseAnalysisCoversAlphaRange) {
  const auto L = case_analysis(mp("8.7e36"), mp("1e40"), PipelineConfig{}, 1);
  EXPECT_TRUE(L.covered) << L.coverage_note;
  EXPECT_FALSE(L.entries.empty());
  EXPECT_THROW(case_analysis(mp("1e30"), mp("1e40"), PipelineConfig{}), PreconditionError);
}

TEST(Ledger, Eta1HatL1) {
  // Crude but independent: trapezoid on a fine grid out to |u| = 4000 plus the 10/(pi^2 U) tail.
  const double h = 1e-3, U = 4000;
  double s = 0;
  for (double u = h / 2; u < U; u += h) {
    const double pu = kPi * u;
    s += std::fabs(10 * std::sin(0.7 * pu) * std::sin(0.1 * pu) / (pu * pu)) * h;
  }
  const double ref = 2 * (s + 10 / (kPi * kPi * U));
  EXPECT_NEAR(eta1_hat_l1(), ref, 2e-3);
}

TEST(Quant, TripleCountAgainstEnumeration) {
  for (i64 H : {1, 2, 5, 17}) {
    std::vector<int> cnt(3 * H + 2, 0);
    for (i64 a = 1; a <= H; ++a)
      for (i64 b = 1; b <= H; ++b)
        for (i64 c = 1; c <= H; ++c) ++cnt[a + b + c];
    for (i64 m = 0; m <= 3 * H + 1; ++m) ASSERT_EQ(triple_count(m, H), cnt[m]) << H << " " << m;
  }
}

TEST(Quant, SmallCaseAgainstNaiveLoops) {
  const u64 x = 10001;
  const double K = 10;
  const u64 N0s = 30;
  const auto q = quant_positive(x, K, N0s);
  const double xd = x;
  const PrimeWeights w1(SumSpec{xd, CutoffFn::eta1(), 1, std::sqrt(xd)});
  const PrimeWeights w3(SumSpec{xd / K, CutoffFn::eta0(), 1, std::sqrt(xd / K)});
  const i64 H = N0s / 3;
  std::vector<double> r(3 * H + 1, 0);
  for (i64 a = 1; a <= H; ++a)
    for (i64 b = 1; b <= H; ++b)
      for (i64 c = 1; c <= H; ++c) r[a + b + c] += 1;
  KahanSum naive;
  for (std::size_t i = 0; i < w1.size(); ++i)
    for (std::size_t j = 0; j < w1.size(); ++j)
      for (std::size_t k = 0; k < w3.size(); ++k) {
        const i64 m = static_cast<i64>(x) - static_cast<i64>(w1.n()[i] + w1.n()[j] + w3.n()[k]);
        if (m >= 3 && m <= 3 * H) naive.add(w1.w()[i] * w1.w()[j] * w3.w()[k] * r[m]);
      }
  EXPECT_NEAR(q.direct, naive.value(), 1e-9 * naive.value());
  EXPECT_LE(q.rel_diff, 1e-6);
  EXPECT_TRUE(q.positive);
}

TEST(Quant, Preconditions) {
  EXPECT_THROW(quant_positive(2000001, 10, 300), PreconditionError);
  EXPECT_THROW(quant_positive(100001, 1000, 300), PreconditionError);
}

TEST(Goldbach, AllEvenUpToMillion) {
  const auto s = goldbach_verify(1000000);
  EXPECT_TRUE(s.complete);
  EXPECT_EQ(s.exceptions, 0u);
  EXPECT_EQ(s.checked, (1000000 - 4) / 2 + 1);
}

TEST(Goldbach, ResumeIsDeterministic) {
  const std::string ck = temp_path("gb.ck");
  std::remove(ck.c_str());
  GoldbachOptions full;
  full.block = 100000;
  const auto ref = goldbach_verify(2000000, full);

  GoldbachOptions part = full;
  part.checkpoint = ck;
  part.stop_after = 7;
  const auto a = goldbach_verify(2000000, part);
  EXPECT_FALSE(a.complete);
  part.resume = true;
  part.stop_after = 4;
  goldbach_verify(2000000, part);
  part.stop_after = 0;
  const auto b = goldbach_verify(2000000, part);
  EXPECT_TRUE(b.complete);
  EXPECT_EQ(b.blocks_resumed, 11u);
  EXPECT_EQ(b.digest, ref.digest);
  EXPECT_EQ(b.checked, ref.checked);
  EXPECT_EQ(b.max_least_p, ref.max_least_p);
  EXPECT_EQ(b.argmax_n, ref.argmax_n);
  std::remove(ck.c_str());
}

TEST(Goldbach, CapAndTornCheckpoint) {
  EXPECT_THROW(goldbach_verify(2000000000ull), ResourceError);
  const std::string ck = temp_path("gb_bad.ck");
  {
    std::ofstream f(ck);
    f << "block 1000 2000 1 0 0 3 1000 abc\n";
  }
  GoldbachOptions o;
  o.checkpoint = ck;
  o.resume = true;
  EXPECT_THROW(goldbach_verify(100000, o), IngestError);
  std::remove(ck.c_str());
}

TEST(PrimeGap, ThresholdAndRandom) {
  const auto r = prime_gap_check(11000000000ull);
  EXPECT_NEAR(r.bound, 1.1e10 / 2.8e7, 1e-9);
  EXPECT_TRUE(r.holds());
  EXPECT_THROW(prime_gap_check(10999999999ull), PreconditionError);
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<u64> d(11000000000ull, 1000000000000ull);
  for (int i = 0; i < 100; ++i) {
    const u64 x = d(rng);
    const auto g = prime_gap_check(x);
    ASSERT_TRUE(g.holds()) << x;
    ASSERT_TRUE(arith::is_prime_u64(x - static_cast<u64>(g.actual)));
  }
}

TEST(Psi, SmallY) {
  for (const auto& c : psi_check({1e5, 1e6, 1e7})) EXPECT_TRUE(c.holds()) << c.anchor;
}
