#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "mtoeplitz/numtheory.hpp"
#include "mtoeplitz/sequence.hpp"
#include "mtoeplitz/summation.hpp"
#include "mtoeplitz/zeta.hpp"
#include "oracles.hpp"

using namespace mtoeplitz;

TEST(SievePrimes, SmallLimits) {
  EXPECT_TRUE(sieve_primes(1).empty());
  EXPECT_EQ(sieve_primes(10), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(sieve_primes(100).size(), 25u);
}

TEST(SievePrimes, MatchesTrialDivision) {
  EXPECT_EQ(sieve_primes(20000), oracle::primes_trial(20000));
}

TEST(IsPrime, AgreesWithTrialDivisionAndLargeKnownPrimes) {
  for (std::uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), oracle::is_prime_trial(n)) << n;
  EXPECT_TRUE(is_prime(1'000'000'007ULL));
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(1'000'000'007ULL * 998'244'353ULL));
}

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).empty());
  const auto f12 = factorize(12);
  ASSERT_EQ(f12.size(), 2u);
  EXPECT_EQ(f12[0], (PrimePower{2, 2}));
  EXPECT_EQ(f12[1], (PrimePower{3, 1}));
  const auto f900 = factorize(900);
  ASSERT_EQ(f900.size(), 3u);
  EXPECT_EQ(f900.value_u64(), 900u);
  for (const auto& pp : f900.parts()) EXPECT_EQ(pp.exponent, 2u);
}

TEST(Factorize, ReconstructsAndMatchesDivisorCountUpTo1e5) {
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    const auto f = factorize(n);
    std::uint64_t prod = 1;
    std::uint64_t prev = 0;
    for (const auto& pp : f.parts()) {
      EXPECT_GT(pp.prime, prev);
      EXPECT_GE(pp.exponent, 1u);
      prev = pp.prime;
      for (std::uint32_t e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    ASSERT_EQ(prod, n);
    ASSERT_EQ(divisors(n).size(), divisor_count(n)) << n;
  }
}

TEST(Factorize, MatchesTrialDivisionOnLargeInputs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 1 + rng() % 1'000'000'000'000ULL;
    const auto f = factorize(n);
    const auto ref = oracle::factor_trial(n);
    ASSERT_EQ(f.size(), ref.size()) << n;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      EXPECT_EQ(f[k].prime, ref[k].first);
      EXPECT_EQ(f[k].exponent, ref[k].second);
    }
  }
}

TEST(Factorization, RejectsNonCanonicalParts) {
  EXPECT_THROW(Factorization({{4, 1}}), PreconditionFailed);
  EXPECT_THROW(Factorization({{3, 1}, {2, 1}}), PreconditionFailed);
  EXPECT_THROW(Factorization({{2, 0}}), PreconditionFailed);
}

TEST(Divisors, Examples) {
  EXPECT_EQ(divisors(1), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
  const auto d = divisors(1024);
  ASSERT_EQ(d.size(), 11u);
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_EQ(d[k], std::uint64_t{1} << k);
}

TEST(Divisors, MatchBruteForce) {
  for (std::uint64_t n = 1; n <= 3000; ++n) ASSERT_EQ(divisors(n), oracle::divisors_brute(n)) << n;
}

TEST(Divisors, CapIsEnforcedAndLazyWalkCoversLattice) {
  // 2^5 * 3^5 * ... over 10 primes has 6^10 > 2^24 divisors.
  std::vector<PrimePower> parts;
  for (std::uint64_t t : sieve_primes(29)) parts.push_back({t, 5});
  const Factorization big(parts);
  EXPECT_THROW(divisors(big), DivisorCapExceeded);

  const auto c = primorial_power(7, 2).factors;
  std::vector<std::uint64_t> seen;
  iterate_divisors(c, [&](std::uint64_t d, std::span<const std::uint32_t>) { seen.push_back(d); });
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(seen, oracle::divisors_brute(44100));
}

TEST(DivisorCount, Examples) {
  EXPECT_EQ(divisor_count(1), 1u);
  EXPECT_EQ(divisor_count(12), 6u);
  for (std::uint32_t k = 0; k < 63; ++k) EXPECT_EQ(divisor_count(std::uint64_t{1} << k), k + 1);
}

TEST(GcdLcm, Examples) {
  EXPECT_EQ(gcd(12, 18), 6u);
  EXPECT_EQ(lcm(12, 18), 36u);
  EXPECT_EQ(gcd(7, 7), 7u);
  EXPECT_EQ(lcm(7, 7), 7u);
  EXPECT_EQ(gcd(1, 99), 1u);
  EXPECT_EQ(lcm(1, 99), 99u);
  EXPECT_THROW(gcd(0, 3), PreconditionFailed);
  EXPECT_THROW(lcm(std::uint64_t{1} << 40, (std::uint64_t{1} << 40) - 1), ResourceLimit);
}

TEST(GcdLcm, ProductIdentityOnRandomPairs) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t a = 1 + rng() % 1'000'000;
    const std::uint64_t b = 1 + rng() % 1'000'000;
    ASSERT_EQ(static_cast<unsigned __int128>(gcd(a, b)) * lcm(a, b),
              static_cast<unsigned __int128>(a) * b);
  }
}

TEST(PrimorialPower, Examples) {
  EXPECT_EQ(primorial_power(5, 1).value, 30);
  EXPECT_EQ(primorial_power(5, 2).value, 900);
  const auto c = primorial_power(13, 3);
  ASSERT_EQ(c.factors.size(), 6u);
  for (const auto& pp : c.factors.parts()) EXPECT_EQ(pp.exponent, 3u);
  BigNatural expect = 1;
  for (int t : {2, 3, 5, 7, 11, 13}) expect *= BigNatural(t) * t * t;
  EXPECT_EQ(c.value, expect);
  EXPECT_THROW(primorial_power(9, 1), PreconditionFailed);
  EXPECT_THROW(primorial_power(5, 0), PreconditionFailed);
}

TEST(DiagonalWitnessModulus, Examples) {
  EXPECT_EQ(diagonal_witness_modulus(2).value_u64(), 2u);
  EXPECT_EQ(diagonal_witness_modulus(3).value_u64(), 6u);
  EXPECT_EQ(diagonal_witness_modulus(5).value_u64(), 60u);
  EXPECT_EQ(diagonal_witness_modulus(7).value_u64(), 420u);
}

TEST(DiagonalWitnessModulus, ExponentIsLargestPowerNotExceedingT) {
  for (std::uint64_t T : sieve_primes(200)) {
    const auto c = diagonal_witness_modulus(T);
    for (const auto& pp : c.parts()) {
      const double lhs = std::pow(static_cast<double>(pp.prime), pp.exponent);
      EXPECT_LE(lhs, static_cast<double>(T));
      EXPECT_GT(lhs * static_cast<double>(pp.prime), static_cast<double>(T));
    }
  }
}

namespace {

TruncatedSequence random_sequence(std::size_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TruncatedSequence x(N);
  for (std::size_t n = 1; n <= N; ++n) x(n) = u(rng);
  return x;
}

}  // namespace

TEST(DirichletConvolve, OnesGiveDivisorCount) {
  const std::size_t N = 10000;
  const TruncatedSequence ones(N, 1.0);
  const auto c = dirichlet_convolve(ones, ones);
  EXPECT_EQ(c(6), 4.0);
  for (std::size_t n = 1; n <= N; ++n) ASSERT_EQ(c(n), static_cast<double>(oracle::divisors_brute(n).size()));
}

TEST(DirichletConvolve, UnitIsIdentity) {
  const auto b = random_sequence(500, 1);
  EXPECT_EQ(dirichlet_convolve(TruncatedSequence::unit(500, 1), b), b);
}

TEST(DirichletConvolve, CommutativeAndAssociative) {
  const std::size_t N = 2000;
  const auto a = random_sequence(N, 2), b = random_sequence(N, 3), c = random_sequence(N, 4);
  const auto ab = dirichlet_convolve(a, b), ba = dirichlet_convolve(b, a);
  const auto l = dirichlet_convolve(ab, c), r = dirichlet_convolve(a, dirichlet_convolve(b, c));
  for (std::size_t n = 1; n <= N; ++n) {
    ASSERT_NEAR(ab(n), ba(n), 1e-12 * (1 + std::abs(ab(n))));
    ASSERT_NEAR(l(n), r(n), 1e-11 * (1 + std::abs(l(n))));
  }
}

TEST(DirichletConvolve, ProductOfMultiplicativeIsMultiplicative) {
  const std::size_t N = 20000;
  TruncatedSequence a(N), b(N);
  for (std::size_t n = 1; n <= N; ++n) {
    a(n) = 1.0 / static_cast<double>(n);  // completely multiplicative
    double phi = static_cast<double>(n);  // Euler phi, multiplicative
    for (const auto& [t, e] : oracle::factor_trial(n)) phi *= 1.0 - 1.0 / static_cast<double>(t);
    b(n) = phi;
  }
  const auto c = dirichlet_convolve(a, b);
  std::mt19937_64 rng(8);
  int checked = 0;
  while (checked < 100) {
    const std::uint64_t m = 1 + rng() % 140, n = 1 + rng() % 140;
    if (std::gcd(m, n) != 1 || m * n > N) continue;
    EXPECT_NEAR(c(m * n), c(m) * c(n), 1e-12 * std::abs(c(m * n)));
    ++checked;
  }
}

TEST(DirichletConvolve, RejectsLengthMismatch) {
  EXPECT_THROW(dirichlet_convolve(TruncatedSequence(3), TruncatedSequence(4)), PreconditionFailed);
}

TEST(Zeta, ClosedForms) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(zeta(2.0), pi * pi / 6.0, 1e-14);
  EXPECT_NEAR(zeta(4.0), std::pow(pi, 4) / 90.0, 1e-14);
  EXPECT_THROW(zeta(1.0), PreconditionFailed);
}

TEST(Zeta, ThreeHalvesAgainstPartialSumWithTailBounds) {
  const auto br = oracle::zeta_bracket(1.5, 10'000'000);
  const double z = zeta(1.5);
  EXPECT_GE(z, static_cast<double>(br.lower) * (1 - 1e-12));
  EXPECT_LE(z, static_cast<double>(br.upper) * (1 + 1e-12));
  EXPECT_NEAR(z, 2.612375, 1e-6);
}

TEST(Zeta, TailOfThreeMatchesDirectSum) {
  // sum_{n > 1} n^{-3} = zeta(3) - 1.
  const auto br = oracle::zeta_bracket(3.0, 100000);
  EXPECT_NEAR(power_tail(3.0, 1) + 1.0, static_cast<double>(0.5L * (br.lower + br.upper)), 1e-10);
}

TEST(Zeta, EulerProductWithinTailBound) {
  for (double s : {1.5, 2.0, 3.0}) {
    const std::uint64_t P = 100000;
    const auto primes = sieve_primes(P);
    const double prod = zeta_euler_product(s, primes);
    const double z = zeta(s);
    // Every n <= P has all prime factors <= P, so 0 <= zeta - product <= sum_{n > P} n^{-s}.
    const double tail = std::pow(static_cast<double>(P), 1.0 - s) / (s - 1.0);
    EXPECT_LE(prod, z * (1 + 1e-12));
    EXPECT_LE(z - prod, tail * (1 + 1e-9));
  }
}

TEST(CompensatedSum, RecoversCancellation) {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-17);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-14, 1e-26);
}
