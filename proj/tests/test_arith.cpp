#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "circle/arith.hpp"
#include "oracle_values.hpp"

using namespace circle;
using namespace circle::arith;

namespace {

bool trial_division_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

double lambda_trial(u64 n) {
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return n > 1 ? std::log(static_cast<double>(n)) : 0.0;
}

}  // namespace

TEST(Sieve, PsiAgainstOracle) {
  const auto t = sieve(1, 10000);
  KahanSum s;
  for (u64 n = 1; n <= 10000; ++n) s.add(t.Lambda(n));
  EXPECT_NEAR(s.value(), oracle::kPsi1e4, 1e-9 * oracle::kPsi1e4);
  EXPECT_NEAR(chebyshev_psi(10000), oracle::kPsi1e4, 1e-9 * oracle::kPsi1e4);
}

TEST(Sieve, WindowMatchesTrialDivision) {
  const u64 lo = 1000000000000ull, hi = lo + 5000;
  const auto t = sieve(lo, hi);
  for (u64 n = lo; n <= hi; ++n) {
    ASSERT_EQ(t.prime(n), trial_division_prime(n)) << n;
    ASSERT_NEAR(t.Lambda(n), lambda_trial(n), 1e-12) << n;
  }
}

TEST(Sieve, MobiusAgreesWithFactorization) {
  const auto t = sieve(1, 20000);
  for (u64 n = 1; n <= 20000; ++n) ASSERT_EQ(t.mu(n), mobius(n)) << n;
  EXPECT_EQ(t.mu(1), 1);
  EXPECT_EQ(t.mu(30), -1);
  EXPECT_EQ(t.mu(12), 0);
}

TEST(Sieve, PrimeCount) {
  const auto t = sieve(1, 1000000);
  long long c = 0;
  for (u64 n = 1; n <= 1000000; ++n) c += t.prime(n);
  EXPECT_EQ(c, oracle::kPrimesBelow1e6);
}

TEST(Sieve, TooLargeWindowIsResourceError) {
  SieveOptions o;
  o.max_entries = 1000;
  EXPECT_THROW(sieve(1, 5000, o), ResourceError);
}

TEST(Sieve, DumpRoundTrip) {
  const auto t = sieve(100, 3000);
  std::stringstream ss;
  dump(t, ss);
  const auto u = load(ss);
  EXPECT_EQ(u.lo, t.lo);
  EXPECT_EQ(u.hi, t.hi);
  EXPECT_EQ(u.lambda, t.lambda);
  EXPECT_EQ(u.mobius, t.mobius);
  EXPECT_EQ(u.is_prime, t.is_prime);
}

TEST(Sieve, LoadRejectsGarbage) {
  std::stringstream ss("not a table");
  EXPECT_THROW(load(ss), IngestError);
}

TEST(Primality, SmallCases) {
  EXPECT_TRUE(is_prime_u64(2));
  EXPECT_FALSE(is_prime_u64(1));
  EXPECT_FALSE(is_prime_u64(561));
  EXPECT_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Primality, NearTrillionTwoRoutes) {
  for (u64 n = 1000000000000ull; n < 1000000000000ull + 200; ++n)
    ASSERT_EQ(is_prime_u64(n), trial_division_prime(n)) << n;
  EXPECT_TRUE(is_prime_u64(1000000000039ull));
}

TEST(Primality, LargeSemiprimesFactor) {
  const u64 p = 4294967291ull, q = 4294967279ull;  // primes just below 2^32
  const u64 n = p * q;
  EXPECT_FALSE(is_prime_u64(n));
  const auto f = factorize(n);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].first * f[1].first, n);
}

TEST(Factorize, RandomProductsReassemble) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const u64 n = 2 + rng() % 1000000000000000ull;
    u64 prod = 1;
    for (auto [p, e] : factorize(n)) {
      ASSERT_TRUE(is_prime_u64(p));
      for (int k = 0; k < e; ++k) prod *= p;
    }
    ASSERT_EQ(prod, n);
  }
}

TEST(Arith, PhiAndOmega) {
  EXPECT_EQ(euler_phi(1), 1u);
  EXPECT_EQ(euler_phi(36), 12u);
  EXPECT_EQ(omega(30), 3);
  EXPECT_EQ(omega(1), 0);
  u64 sum = 0;
  for (u64 d = 1; d <= 360; ++d)
    if (360 % d == 0) sum += euler_phi(d);
  EXPECT_EQ(sum, 360u);
}

TEST(Arith, PrimorialCoprimality) {
  EXPECT_TRUE(coprime_to_primorial(15, 2));
  EXPECT_FALSE(coprime_to_primorial(15, 3));
  EXPECT_TRUE(coprime_to_primorial(1, 1e9));
  PrimorialCondition c{10};
  EXPECT_TRUE(c.admits(11 * 13));
  EXPECT_FALSE(c.admits(7 * 13));
}

TEST(Arith, PsiManyIsMonotone) {
  const auto v = chebyshev_psi_many({10, 100, 1000, 10000});
  ASSERT_EQ(v.size(), 4u);
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LT(v[i - 1], v[i]);
  EXPECT_NEAR(v[3], oracle::kPsi1e4, 1e-9 * oracle::kPsi1e4);
}
