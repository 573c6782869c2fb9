#include "ladderlab/arithmetic.hpp"
#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/zeta_critical.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

using namespace ladderlab;
using namespace ladderlab::arith;

namespace {

std::uint32_t brute_d(std::uint64_t n) {
  std::uint32_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += (n % k == 0);
  return c;
}

const DivisorTable& table() {
  static const DivisorTable t = sieve_divisors(2'000'000);
  return t;
}

}  // namespace

TEST(Sieve, SmallValues) {
  const auto& t = table();
  EXPECT_EQ(t.d(1), 1u);
  EXPECT_EQ(t.d(7), 2u);
  EXPECT_EQ(t.d(12), 6u);
  for (std::uint64_t n = 1; n <= 2000; ++n) ASSERT_EQ(t.d(n), brute_d(n)) << n;
  EXPECT_EQ(t.prefix(10), 27u);
  EXPECT_EQ(t.prefix(0), 0u);
}

TEST(Sieve, PrefixInvariants) {
  const auto& t = table();
  for (std::uint64_t N = 1; N <= 5000; ++N) ASSERT_EQ(t.prefix(N) - t.prefix(N - 1), t.d(N));
  EXPECT_EQ(t.prefix(1'000'000), 13970034u);
}

TEST(Sieve, Multiplicative) {
  const auto& t = table();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> u(1, 1400);
  int tested = 0;
  while (tested < 10000) {
    const auto m = u(rng), n = u(rng);
    if (std::gcd(m, n) != 1) continue;
    ASSERT_EQ(t.d(m * n), t.d(m) * t.d(n)) << m << "*" << n;
    ++tested;
  }
}

TEST(Sieve, PrimesHaveTwoDivisors) {
  const auto& t = table();
  const auto primes = shared_primes(100000).primes_up_to(100000);
  for (auto p : primes) ASSERT_EQ(t.d(p), 2u) << p;
}

TEST(Sieve, BudgetAndDomain) {
  EXPECT_THROW(sieve_divisors(0), DomainError);
  EXPECT_THROW(sieve_divisors(100'000'001), BudgetError);
  EXPECT_THROW(table().d(0), DomainError);
  EXPECT_THROW(table().d(table().n_max() + 1), DomainError);
  EXPECT_GT(table().memory_bytes(), 2 * table().n_max());
}

TEST(Hyperbola, StepFunction) {
  EXPECT_EQ(divisor_summatory(1.0), 1);
  EXPECT_EQ(divisor_summatory(10.0), 27);
  EXPECT_EQ(divisor_summatory(10.9), 27);
  EXPECT_EQ(divisor_summatory(11.0), 29);
  EXPECT_THROW(divisor_summatory(0.5), DomainError);
  EXPECT_EQ(divisor_summatory_n(0), 0);
}

TEST(Hyperbola, EqualsSieveExhaustively) {
  const auto& t = table();
  for (std::uint64_t N = 1; N <= 100000; ++N) {
    ASSERT_EQ(divisor_summatory_n(N), BigInt(t.prefix(N))) << N;
  }
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> u(1, t.n_max());
  for (int i = 0; i < 300; ++i) {
    const auto N = u(rng);
    ASSERT_EQ(divisor_summatory_n(N), BigInt(t.prefix(N))) << N;
  }
}

TEST(Hyperbola, LargeArguments) {
  // D(1e8) from the segmented sieve (arithmetic smoke run).
  EXPECT_EQ(divisor_summatory_n(100'000'000), BigInt(1857511568));
  // Beyond 64-bit partial sums the result stays exact.
  const BigInt big = divisor_summatory_n(1'000'000'000'000ULL);
  EXPECT_GT(big, BigInt(1'000'000'000'000ULL) * 27);
}

TEST(DeltaError, DirectSubstitution) {
  EXPECT_NEAR(delta_error(2.0), 3.0 - 2.0 * std::log(2.0) - (2.0 * kEulerGamma - 1.0) * 2.0, 1e-14);
  EXPECT_THROW(delta_error(1.5), DomainError);
}

TEST(DeltaError, DirichletBoundAndSigns) {
  const auto& t = table();
  bool pos = false, neg = false;
  double worst = 0.0;
  for (std::uint64_t N = 1000; N <= 1'000'000; N += 7) {
    const double x = static_cast<double>(N);
    const double D = static_cast<double>(t.prefix(N));
    const double delta = D - x * std::log(x) - (2.0 * kEulerGamma - 1.0) * x;
    worst = std::max(worst, std::abs(delta) / std::sqrt(x));
    pos = pos || delta > 0;
    neg = neg || delta < 0;
  }
  EXPECT_LE(worst, 3.0);
  EXPECT_TRUE(pos);
  EXPECT_TRUE(neg);
  EXPECT_LE(std::abs(delta_error(1e6)) / 1e3, 3.0);
}

TEST(Primes, Counts) {
  EXPECT_EQ(prime_count(10.0), 4u);
  EXPECT_EQ(prime_count(100.0), 25u);
  EXPECT_EQ(prime_count(2.0), 1u);
  EXPECT_EQ(prime_count(1e6), 78498u);
  const double r = 78498.0 / (1e6 / std::log(1e6));
  EXPECT_GT(r, 1.0);
  EXPECT_LT(r, 1.2);
  EXPECT_THROW(prime_count(1.0), DomainError);
  EXPECT_THROW(prime_count(2e8), DomainError);
}

TEST(Primes, TableQueries) {
  const auto t = PrimeTable::sieve(1000);
  EXPECT_TRUE(t.is_prime(2));
  EXPECT_TRUE(t.is_prime(997));
  EXPECT_FALSE(t.is_prime(1));
  EXPECT_FALSE(t.is_prime(999));
  EXPECT_EQ(t.count_n(1000), 168u);
  EXPECT_EQ(t.primes_up_to(30), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_THROW(t.is_prime(1001), DomainError);
  EXPECT_THROW(PrimeTable::sieve(1), DomainError);
  // count agrees with enumeration everywhere
  const auto ps = t.primes_up_to(1000);
  std::uint64_t k = 0;
  for (std::uint64_t n = 0; n <= 1000; ++n) {
    if (k < ps.size() && ps[k] == n) ++k;
    ASSERT_EQ(t.count_n(n), k) << n;
  }
}

TEST(Euler, ReconstructsZeta) {
  const auto r2 = euler_pi_representation(2.0);
  EXPECT_NEAR(r2.value, M_PI * M_PI / 6.0, 1e-6);
  EXPECT_LE(r2.tail_lower, r2.tail_upper);
  const auto r3 = euler_pi_representation(3.0);
  EXPECT_NEAR(r3.value, zeta::zeta_real_axis(3.0), 1e-6);
  EXPECT_THROW(euler_pi_representation(1.4), DomainError);
  EXPECT_THROW(euler_pi_representation(7.0), DomainError);
  // 1.5 cannot reach 1e-6 with a 1e7 cut: the tail bound is reported.
  EXPECT_THROW(euler_pi_representation(1.5), ConvergenceError);
}

TEST(Csv, Exports) {
  std::ostringstream d, p;
  write_divisor_csv(table(), d, 1, 4);
  EXPECT_EQ(d.str(), "n,d,D\n1,1,1\n2,2,3\n3,2,5\n4,3,8\n");
  write_prime_csv(PrimeTable::sieve(10), p, 10);
  EXPECT_EQ(p.str(), "k,p\n1,2\n2,3\n3,5\n4,7\n");
}
