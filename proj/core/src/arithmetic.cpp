// arithmetic.cpp

#include "ladderlab/arithmetic.hpp"

#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <ostream>

namespace ladderlab::arith {
namespace {

constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t floor_arg(double x, double min, const char* op) {
  if (!(x >= min) || !std::isfinite(x)) {
    throw DomainError(std::string(op) + ": argument must be >= " + std::to_string(min));
  }
  if (x >= 1.8e19) throw DomainError(std::string(op) + ": argument too large");
  return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

std::uint32_t DivisorTable::d(std::uint64_t n) const {
  if (n < 1 || n > n_max_) throw DomainError("DivisorTable::d: n outside [1, n_max]");
  return d_[n];
}

std::uint64_t DivisorTable::prefix(std::uint64_t N) const {
  if (N > n_max_) throw DomainError("DivisorTable::prefix: N > n_max");
  const std::uint64_t k = N / kCheckpoint;
  std::uint64_t acc = checkpoints_[k];
  for (std::uint64_t n = k * kCheckpoint + 1; n <= N; ++n) acc += d_[n];
  return acc;
}

std::size_t DivisorTable::memory_bytes() const noexcept {
  return d_.size() * sizeof(std::uint16_t) + checkpoints_.size() * sizeof(std::uint64_t);
}

DivisorTable sieve_divisors(std::uint64_t n_max) {
  if (n_max < 1) throw DomainError("sieve_divisors: n_max must be >= 1");
  if (n_max > kMaxSieve) {
    throw BudgetError("sieve_divisors: n_max above 1e8 exceeds the memory budget");
  }
  DivisorTable t;
  t.n_max_ = n_max;
  t.d_.assign(n_max + 1, 0);
  const std::uint64_t root = isqrt(n_max);
  // Each divisor pair (k, m/k) with k < m/k adds 2, k = m/k adds 1; only
  // k <= sqrt(n_max) is visited, one cache-sized segment at a time.
  for (std::uint64_t lo = 1; lo <= n_max; lo += kSegment) {
    const std::uint64_t hi = std::min(n_max, lo + kSegment - 1);
    for (std::uint64_t k = 1; k <= root && k * k <= hi; ++k) {
      std::uint64_t m = std::max(k * k, (lo + k - 1) / k * k);
      if (m == k * k) {
        t.d_[m] += 1;
        m += k;
      }
      for (; m <= hi; m += k) t.d_[m] += 2;
    }
  }
  t.checkpoints_.assign(n_max / DivisorTable::kCheckpoint + 1, 0);
  std::uint64_t acc = 0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    acc += t.d_[n];
    if (n % DivisorTable::kCheckpoint == 0) t.checkpoints_[n / DivisorTable::kCheckpoint] = acc;
  }
  return t;
}

BigInt divisor_summatory_n(std::uint64_t N) {
  if (N == 0) return 0;
  const std::uint64_t r = isqrt(N);
  unsigned __int128 sum = 0;
  for (std::uint64_t n = 1; n <= r; ++n) sum += N / n;
  const unsigned __int128 total = 2 * sum - static_cast<unsigned __int128>(r) * r;
  BigInt out = static_cast<std::uint64_t>(total >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(total);
  return out;
}

BigInt divisor_summatory(double x) { return divisor_summatory_n(floor_arg(x, 1.0, "divisor_summatory")); }

double delta_error(double x) {
  const std::uint64_t N = floor_arg(x, 2.0, "delta_error");
  const double D = divisor_summatory_n(N).convert_to<double>();
  return D - x * std::log(x) - (2.0 * kEulerGamma - 1.0) * x;
}

PrimeTable PrimeTable::sieve(std::uint64_t limit) {
  if (limit < 2) throw DomainError("PrimeTable: limit must be >= 2");
  if (limit > kMaxSieve) throw BudgetError("PrimeTable: limit above 1e8 exceeds the budget");
  PrimeTable t;
  t.limit_ = limit;
  const std::uint64_t bits = (limit - 1) / 2 + 1;  // indices 0..(limit-1)/2
  t.bits_.assign((bits + 63) / 64, ~std::uint64_t{0});
  auto clear = [&](std::uint64_t i) { t.bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); };
  clear(0);  // 1 is not prime
  for (std::uint64_t i = bits; i < t.bits_.size() * 64; ++i) clear(i);
  for (std::uint64_t p = 3; p * p <= limit; p += 2) {
    if (!t.is_prime(p)) continue;
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) clear(m / 2);
  }
  t.before_.assign(t.bits_.size() + 1, 0);
  for (std::size_t w = 0; w < t.bits_.size(); ++w) {
    t.before_[w + 1] = t.before_[w] + static_cast<std::uint32_t>(std::popcount(t.bits_[w]));
  }
  return t;
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw DomainError("PrimeTable::is_prime: n above table limit");
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  const std::uint64_t i = n / 2;
  return (bits_[i >> 6] >> (i & 63)) & 1u;
}

std::uint64_t PrimeTable::count_n(std::uint64_t n) const {
  if (n > limit_) throw DomainError("PrimeTable::count: x above table limit");
  if (n < 2) return 0;
  const std::uint64_t last = (n - 1) / 2;  // highest odd index <= n
  const std::uint64_t w = last >> 6;
  const unsigned used = static_cast<unsigned>(last & 63) + 1;
  const std::uint64_t mask = used == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << used) - 1);
  return 1 + before_[w] + static_cast<std::uint64_t>(std::popcount(bits_[w] & mask));
}

std::uint64_t PrimeTable::count(double x) const { return count_n(floor_arg(x, 0.0, "prime_count")); }

std::vector<std::uint64_t> PrimeTable::primes_up_to(std::uint64_t n) const {
  n = std::min(n, limit_);
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  out.reserve(count_n(n));
  out.push_back(2);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word != 0) {
      const std::uint64_t p = 2 * (w * 64 + static_cast<std::uint64_t>(std::countr_zero(word))) + 1;
      if (p > n) return out;
      out.push_back(p);
      word &= word - 1;
    }
  }
  return out;
}

const PrimeTable& shared_primes(std::uint64_t at_least) {
  static std::mutex mutex;
  static std::vector<std::unique_ptr<PrimeTable>> tables;  // kept alive for earlier callers
  std::lock_guard lock(mutex);
  if (tables.empty() || tables.back()->limit() < at_least) {
    std::uint64_t limit = tables.empty() ? std::uint64_t{1} << 20 : tables.back()->limit() * 2;
    while (limit < at_least) limit *= 2;
    limit = std::min(std::max(limit, at_least), kMaxSieve);
    if (limit < at_least) throw BudgetError("prime_count: x above 1e8");
    tables.push_back(std::make_unique<PrimeTable>(PrimeTable::sieve(limit)));
  }
  return *tables.back();
}

std::uint64_t prime_count(double x) {
  const std::uint64_t n = floor_arg(x, 2.0, "prime_count");
  if (n > kMaxSieve) throw DomainError("prime_count: x must be <= 1e8");
  return shared_primes(n).count_n(n);
}

EulerRepresentation euler_pi_representation(double s, double x_cut, double tol) {
  if (!(s >= 1.5 && s <= 6.0)) throw DomainError("euler_pi_representation: s must be in [1.5, 6]");
  if (!(x_cut >= 100.0 && x_cut <= static_cast<double>(kMaxSieve))) {
    throw DomainError("euler_pi_representation: x_cut must be in [100, 1e8]");
  }
  const auto X = static_cast<std::uint64_t>(x_cut);
  const auto& table = shared_primes(X);
  const auto primes = table.primes_up_to(X);

  // s * int_a^b k / (x (x^s - 1)) dx = k [g(b) - g(a)], g(x) = ln(1 - x^-s).
  auto g = [s](double x) { return std::log1p(-std::pow(x, -s)); };
  detail::CompensatedSum acc;
  for (std::size_t k = 1; k <= primes.size(); ++k) {
    const double a = static_cast<double>(primes[k - 1]);
    const double b = k < primes.size() ? static_cast<double>(primes[k]) : static_cast<double>(X);
    if (b > a) acc.add(static_cast<double>(k) * (g(b) - g(a)));
  }

  const double Xd = static_cast<double>(X);
  const double pi_X = static_cast<double>(primes.size());
  const double x_pow = std::pow(Xd, -s);
  EulerRepresentation out;
  out.s = s;
  out.x_cut = Xd;
  out.primes_used = primes.size();
  out.tail_lower = -pi_X * std::log1p(-x_pow);
  out.tail_upper = 1.25506 / std::log(Xd) * s * Xd * x_pow / ((s - 1.0) * (1.0 - x_pow));
  const double half_width = 0.5 * (out.tail_upper - out.tail_lower);
  out.log_value = acc.value() + 0.5 * (out.tail_lower + out.tail_upper);
  out.value = std::exp(out.log_value);
  if (half_width > tol) {
    throw ConvergenceError("euler_pi_representation: tail bound exceeds tolerance at x_cut=" +
                               std::to_string(Xd),
                           half_width);
  }
  return out;
}

void write_divisor_csv(const DivisorTable& table, std::ostream& out, std::uint64_t from,
                       std::uint64_t to) {
  to = std::min(to, table.n_max());
  out << "n,d,D\n";
  if (from < 1) from = 1;
  std::uint64_t acc = from > 1 ? table.prefix(from - 1) : 0;
  for (std::uint64_t n = from; n <= to; ++n) {
    acc += table.d(n);
    out << n << ',' << table.d(n) << ',' << acc << '\n';
  }
}

void write_prime_csv(const PrimeTable& table, std::ostream& out, std::uint64_t to) {
  out << "k,p\n";
  std::uint64_t k = 0;
  for (auto p : table.primes_up_to(to)) out << ++k << ',' << p << '\n';
}

}  // namespace ladderlab::arith
