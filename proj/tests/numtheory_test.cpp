#include <gtest/gtest.h>

#include <random>

#include "ecstat/numtheory.hpp"

using namespace ecstat;

namespace {

bool trial_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST(NumTheory, IsPrimeAgreesWithTrialDivision) {
  for (u64 n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), trial_prime(n)) << n;
  EXPECT_TRUE(is_prime(1'000'000'007));
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(NumTheory, SieveMatchesPrimality) {
  const auto ps = primes_up_to(1000);
  EXPECT_EQ(ps.size(), 168U);
  for (u64 p : ps) EXPECT_TRUE(trial_prime(p));
}

TEST(NumTheory, FactorReconstructsInput) {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 300; ++i) {
    const u64 n = gen() >> (i % 40) | 1;
    u64 back = 1;
    for (const auto& [q, e] : factor(n)) {
      ASSERT_TRUE(is_prime(q));
      for (unsigned k = 0; k < e; ++k) back *= q;
    }
    ASSERT_EQ(back, n);
  }
  const auto f = factor(600851475143ULL);
  EXPECT_EQ(f.size(), 4U);
  EXPECT_EQ(f.rbegin()->first, 6857U);
}

TEST(NumTheory, FactorOfSemiprimeWithLargeFactors) {
  const u64 n = 4294967291ULL * 4294967279ULL;
  const auto f = factor(n);
  ASSERT_EQ(f.size(), 2U);
  EXPECT_EQ(f.begin()->first, 4294967279ULL);
}

TEST(NumTheory, LegendreMatchesSquares) {
  for (u64 p : {5ULL, 7ULL, 11ULL, 101ULL}) {
    std::vector<int> sq(p, -1);
    sq[0] = 0;
    for (u64 y = 1; y < p; ++y) sq[y * y % p] = 1;
    for (u64 a = 0; a < p; ++a) ASSERT_EQ(legendre(a, p), sq[a]);
  }
}

TEST(NumTheory, IntegerRoots) {
  EXPECT_EQ(isqrt(99), 9U);
  EXPECT_EQ(isqrt(100), 10U);
  EXPECT_EQ(icbrt(26), 2U);
  EXPECT_EQ(icbrt(27), 3U);
  EXPECT_EQ(icbrt(25'000'000), 292U);
  EXPECT_EQ(isqrt(18446744073709551615ULL), 4294967295ULL);
  EXPECT_EQ(reduce_signed(-1, 7), 6U);
}
