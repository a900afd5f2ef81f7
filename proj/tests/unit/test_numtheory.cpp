#include <gtest/gtest.h>

#include <numeric>

#include "apcong/numtheory.hpp"
#include "support/oracles.hpp"

using namespace apcong;

TEST(NumTheory, IsPrimeMatchesTrialDivision) {
  for (std::int64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(static_cast<std::uint64_t>(n)), oracle::is_prime(n)) << n;
}

TEST(NumTheory, IsPrimeLargeValues) {
  EXPECT_TRUE(is_prime((std::uint64_t{1} << 61) - 1));
  EXPECT_FALSE(is_prime((std::uint64_t{1} << 61) + 1));
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(561));
}

TEST(NumTheory, FactorizeReconstructs) {
  for (std::int64_t n = 1; n < 5000; ++n) {
    std::int64_t prod = 1;
    std::int64_t last = 0;
    for (const auto& [p, e] : factorize(n)) {
      ASSERT_TRUE(oracle::is_prime(p));
      ASSERT_GT(p, last);
      last = p;
      for (int i = 0; i < e; ++i) prod *= p;
    }
    ASSERT_EQ(prod, n);
  }
  EXPECT_EQ(factorize(-12), (std::vector<PrimePower>{{2, 2}, {3, 1}}));
  EXPECT_THROW(factorize(0), std::invalid_argument);
}

TEST(NumTheory, RadicalAndSupportedPart) {
  EXPECT_EQ(radical(338 * 3), 2 * 3 * 13);
  EXPECT_EQ(radical(50700), 2 * 3 * 5 * 13);
  EXPECT_EQ(supported_part(8, {2, 5, 13}), 8);
  EXPECT_EQ(supported_part(2 * 2 * 3 * 5, {2, 5}), 20);
  EXPECT_EQ(supported_part(9, {2}), 1);
  EXPECT_EQ(prime_divisors(338), (std::vector<std::int64_t>{2, 13}));
}

TEST(NumTheory, DivisorsMatchBruteForce) {
  for (std::int64_t n = 1; n < 600; ++n) {
    std::vector<std::int64_t> want;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) want.push_back(d);
    ASSERT_EQ(divisors(n), want);
  }
}

TEST(NumTheory, KroneckerAgreesWithEulerAtOddPrimes) {
  for (std::int64_t p = 3; p < 200; ++p) {
    if (!oracle::is_prime(p)) continue;
    for (std::int64_t a = -300; a <= 300; ++a) {
      ASSERT_EQ(kronecker(a, p), oracle::legendre_euler(a, p)) << a << "/" << p;
      ASSERT_EQ(legendre(a, p), oracle::legendre_euler(a, p));
    }
  }
}

TEST(NumTheory, KroneckerAtTwoAndMultiplicativity) {
  for (std::int64_t a = -50; a <= 50; ++a) {
    const std::int64_t r = mod_floor(a, 8);
    const int want = a % 2 == 0 ? 0 : (r == 1 || r == 7) ? 1 : -1;
    ASSERT_EQ(kronecker(a, 2), want) << a;
    for (std::int64_t m = 1; m < 30; ++m)
      for (std::int64_t n = 1; n < 30; ++n) ASSERT_EQ(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
  }
  EXPECT_EQ(kronecker(-4, 7), -1);  // p = 3 mod 4
  EXPECT_EQ(kronecker(-4, 13), 1);
  EXPECT_THROW(legendre(3, 2), std::invalid_argument);
  EXPECT_THROW(legendre(3, 9), std::invalid_argument);
}

TEST(NumTheory, SmallHelpers) {
  EXPECT_EQ(mod_floor(-1, 23), 22);
  EXPECT_EQ(mod_floor(46, 23), 0);
  EXPECT_EQ(gcd64(-12, 18), 6);
  EXPECT_EQ(lcm64(4, 6), 12);
  EXPECT_EQ(primes_up_to(100).size(), 25u);
  EXPECT_EQ(primes_up_to(10000).size(), 1229u);
  for (std::int64_t n = 0; n < 5000; ++n) {
    const std::int64_t r = isqrt(n);
    ASSERT_LE(r * r, n);
    ASSERT_GT((r + 1) * (r + 1), n);
  }
  EXPECT_EQ(isqrt(std::int64_t{3037000499} * 3037000499), 3037000499);
  for (std::uint64_t b = 0; b < 20; ++b) {
    std::uint64_t naive = 1;
    for (std::uint64_t e = 0; e < 20; ++e) {
      ASSERT_EQ(pow_mod(b, e, 97), naive % 97);
      naive = naive * b % 97;
    }
  }
}
