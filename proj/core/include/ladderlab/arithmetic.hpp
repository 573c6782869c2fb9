// arithmetic.hpp
//
// Divisor counts, the summatory function D(x) = sum_{n<=x} d(n), its error
// term Delta(x) = D(x) - x ln x - (2c - 1) x, prime counting, the Euler
// prime-counting form of zeta(s), and exact Fermat rationals.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ladderlab::arith {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline constexpr std::uint64_t kMaxSieve = 100'000'000;

// d(n) for 1 <= n <= n_max. Memory: 2 bytes per n plus one 8-byte prefix
// checkpoint per 64 entries (about 212 MB at n_max = 1e8).
class DivisorTable {
 public:
  std::uint64_t n_max() const noexcept { return n_max_; }
  std::uint32_t d(std::uint64_t n) const;
  // D(N) for 0 <= N <= n_max.
  std::uint64_t prefix(std::uint64_t N) const;
  std::size_t memory_bytes() const noexcept;

  friend DivisorTable sieve_divisors(std::uint64_t n_max);

 private:
  static constexpr std::uint64_t kCheckpoint = 64;
  std::uint64_t n_max_ = 0;
  std::vector<std::uint16_t> d_;             // d_[n], d_[0] unused
  std::vector<std::uint64_t> checkpoints_;   // checkpoints_[k] = D(64 k)
};

// 1 <= n_max <= 1e8; larger requests throw BudgetError.
DivisorTable sieve_divisors(std::uint64_t n_max);

// D(floor(x)) by the hyperbola identity, exact. x >= 1.
BigInt divisor_summatory(double x);
BigInt divisor_summatory_n(std::uint64_t N);

// Delta(x) for x >= 2.
double delta_error(double x);

// Odd-only Eratosthenes bitset with per-word cumulative counts.
class PrimeTable {
 public:
  static PrimeTable sieve(std::uint64_t limit);
  std::uint64_t limit() const noexcept { return limit_; }
  bool is_prime(std::uint64_t n) const;
  // pi(floor(x)) for x <= limit().
  std::uint64_t count(double x) const;
  std::uint64_t count_n(std::uint64_t n) const;
  // Primes p <= n in ascending order.
  std::vector<std::uint64_t> primes_up_to(std::uint64_t n) const;

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> bits_;      // bit i of the table <-> 2i + 1
  std::vector<std::uint32_t> before_;    // set bits in words before this one
};

// Process-wide cached table, grown on demand. 2 <= x <= 1e8.
const PrimeTable& shared_primes(std::uint64_t at_least);
std::uint64_t prime_count(double x);

struct EulerRepresentation {
  double s = 0.0;
  double value = 0.0;        // reconstructed zeta(s)
  double log_value = 0.0;
  double tail_lower = 0.0;   // bounds on the omitted tail of log zeta(s)
  double tail_upper = 0.0;
  double x_cut = 0.0;
  std::uint64_t primes_used = 0;
};

// exp{ s int_2^inf pi(x) / (x (x^s - 1)) dx } summed piece by piece between
// primes up to x_cut; the tail is bracketed with pi(X) <= pi(x) <= 1.25506 x/ln x
// and its midpoint used. Throws ConvergenceError when half the bracket width
// exceeds tol. 1.5 <= s <= 6.
EulerRepresentation euler_pi_representation(double s, double x_cut = 1e7, double tol = 1e-6);

// x^n + y^n over z^n, exact.
struct FermatRational {
  BigInt x, y, z;
  int n = 0;
  BigInt numerator;
  BigInt denominator;

  bool equals_one() const { return numerator == denominator; }
  BigRational q() const { return BigRational(numerator, denominator); }
  // |q - 1| exactly.
  BigRational gap() const;
  // 1 / z^n; gap() >= this whenever q != 1.
  BigRational gap_lower_bound() const { return BigRational(BigInt(1), denominator); }
  double value() const;
};

// n < 3 throws FermatClassError.
FermatRational fermat_rational(const BigInt& x, const BigInt& y, const BigInt& z, int n);

struct FermatScan {
  std::uint64_t checked = 0;
  std::vector<FermatRational> hits;  // q == 1
  BigRational smallest_gap;
  FermatRational smallest_gap_at;
};

// Every x, y < z <= z_max and n_min <= n <= n_max.
FermatScan fermat_scan(int z_max = 50, int n_min = 3, int n_max = 7);

// CSV dumps for inspection.
void write_divisor_csv(const DivisorTable& table, std::ostream& out, std::uint64_t from,
                       std::uint64_t to);
void write_prime_csv(const PrimeTable& table, std::ostream& out, std::uint64_t to);

}  // namespace ladderlab::arith
