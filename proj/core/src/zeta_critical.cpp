// zeta_critical.cpp

#include "ladderlab/zeta_critical.hpp"

#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "riemann_siegel_coefficients.hpp"

#include <omp.h>

#include <array>
#include <cmath>
#include <limits>

namespace ladderlab::zeta {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// B_{2k} / (2k)!, k = 1..14
constexpr std::array<double, 14> kBernoulliOverFactorial = {
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
};

// B_{2k} / (2k (2k-1)), Stirling series for log Gamma, k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,        -1.0 / 360.0,     1.0 / 1260.0,     -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0, 1.0 / 156.0,     -3617.0 / 122400.0,
};

struct SumTables {
  static constexpr std::size_t kSize = std::size_t{1} << 16;
  std::vector<double> log_n;
  std::vector<double> rsqrt_n;
  SumTables() : log_n(kSize), rsqrt_n(kSize) {
    for (std::size_t n = 1; n < kSize; ++n) {
      log_n[n] = std::log(static_cast<double>(n));
      rsqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
    }
  }
};

const SumTables& sum_tables() {
  static const SumTables tables;
  return tables;
}

double rs_truncation_bound(double t) {
  const double base = 0.017 * std::pow(t, -2.75);
  return t >= 200.0 ? base : 8.0 * base;
}

struct ZResult {
  double z;
  double err;
  Method method;
};

ZResult riemann_siegel(double t) {
  const double th = theta(t);
  const double ratio = t / kTwoPi;
  const double a = std::sqrt(ratio);
  const auto n_terms = static_cast<std::size_t>(a);
  const double p = a - static_cast<double>(n_terms);
  const auto& tab = sum_tables();

  double sum = 0.0;
  if (n_terms < SumTables::kSize) {
    for (std::size_t n = 1; n <= n_terms; ++n) {
      sum += tab.rsqrt_n[n] * std::cos(th - t * tab.log_n[n]);
    }
  } else {
    for (std::size_t n = 1; n <= n_terms; ++n) {
      const double dn = static_cast<double>(n);
      sum += std::cos(th - t * std::log(dn)) / std::sqrt(dn);
    }
  }

  const double inv_root = 1.0 / a;  // (t/2pi)^(-1/2)
  double corr = 0.0;
  double scale = 1.0;
  for (int k = 0; k < detail::kCorrectionTerms; ++k) {
    corr += detail::rs_correction(k, p) * scale;
    scale *= inv_root;
  }
  const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
  const double z = 2.0 * sum + sign * std::pow(ratio, -0.25) * corr;
  const double rounding = 4.0 * kEps * std::abs(th) * 2.0 * std::sqrt(static_cast<double>(n_terms));
  return {z, rs_truncation_bound(t) + rounding, Method::riemann_siegel};
}

ZResult euler_maclaurin_z(double t) {
  double err = 0.0;
  const auto zeta = zeta_euler_maclaurin({0.5, t}, &err);
  const double th = theta(t);
  const std::complex<double> rot{std::cos(th), std::sin(th)};
  return {(rot * zeta).real(), err + 1e-14, Method::euler_maclaurin};
}

ZResult evaluate(double t) {
  if (!(t >= kCriticalMinT)) {
    throw DomainError("z_function: t must be >= 10, got " + std::to_string(t));
  }
  return t >= kSplitHeight ? riemann_siegel(t) : euler_maclaurin_z(t);
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  return m == Method::riemann_siegel ? "riemann_siegel" : "euler_maclaurin";
}

double theta(double t) {
  if (!(t > 1.0)) throw DomainError("theta: t must be > 1, got " + std::to_string(t));
  const double u = 1.0 / t;
  const double u2 = u * u;
  const double tail =
      u * (1.0 / 48.0 +
           u2 * (7.0 / 5760.0 +
                 u2 * (31.0 / 80640.0 + u2 * (127.0 / 430080.0 + u2 * (511.0 / 1216512.0)))));
  return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 + tail;
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0)) throw DomainError("log_gamma: requires Re z > 0");
  // Shift until |z| is large enough for the Stirling series.
  std::complex<double> shift_sum{0.0, 0.0};
  while (std::abs(z) < 15.0) {
    shift_sum += std::log(z);
    z += 1.0;
  }
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series{0.0, 0.0};
  std::complex<double> power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series - shift_sum;
}

double theta_exact(double t) {
  if (!(t >= 0.0)) throw DomainError("theta_exact: t must be >= 0");
  return log_gamma({0.25, 0.5 * t}).imag() - 0.5 * t * std::log(kPi);
}

std::complex<double> zeta_euler_maclaurin(std::complex<double> s, double* est_error) {
  const double t_abs = std::abs(s.imag());
  const int n = std::max(30, static_cast<int>(std::ceil(t_abs)) + 10);
  std::complex<double> sum{0.0, 0.0};
  for (int k = 1; k < n; ++k) {
    sum += std::exp(-s * std::log(static_cast<double>(k)));
  }
  const double log_n = std::log(static_cast<double>(n));
  const std::complex<double> n_pow = std::exp(-s * log_n);  // N^{-s}
  sum += static_cast<double>(n) * n_pow / (s - 1.0) + 0.5 * n_pow;

  // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  std::complex<double> rising = s;               // s(s+1)...(s+2k-2)
  std::complex<double> term_pow = n_pow / static_cast<double>(n);  // N^{-s-1}
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  constexpr int kTerms = 12;
  std::complex<double> last{0.0, 0.0};
  for (int k = 1; k <= kTerms + 1; ++k) {
    const std::complex<double> term = kBernoulliOverFactorial[k - 1] * rising * term_pow;
    if (k <= kTerms) {
      sum += term;
    } else {
      last = term;
    }
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    term_pow *= inv_n2;
  }
  if (est_error != nullptr) {
    const double m2 = 2.0 * kTerms + 1.0;
    *est_error = std::abs(last) * std::abs(s + m2) / (s.real() + m2);
  }
  return sum;
}

CriticalSample z_function(double t) {
  const auto r = evaluate(t);
  CriticalSample out;
  out.t = t;
  out.z_value = r.z;
  out.modulus_sq = r.z * r.z;
  out.method = r.method;
  out.est_abs_error = (2.0 * std::abs(r.z) + r.err) * r.err;
  return out;
}

double z_value(double t) { return evaluate(t).z; }

double modulus_sq(double t) {
  const double z = evaluate(t).z;
  return z * z;
}

std::vector<CriticalSample> modulus_sq_batch(std::span<const double> ts, int threads) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] >= kCriticalMinT)) {
      throw BatchDomainError("modulus_sq_batch: t must be >= 10", i);
    }
    if (i > 0 && ts[i] < ts[i - 1]) {
      throw BatchDomainError("modulus_sq_batch: heights not ascending", i);
    }
  }
  sum_tables();
  detail::rs_coefficients();
  std::vector<CriticalSample> out(ts.size());
  const auto count = static_cast<std::ptrdiff_t>(ts.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = z_function(ts[static_cast<std::size_t>(i)]);
  }
  return out;
}

double zeta_real_axis(double s) {
  if (!(s >= 1.1)) throw DomainError("zeta_real_axis: s must be >= 1.1, got " + std::to_string(s));
  constexpr int n = 20;
  double sum = 0.0;
  for (int k = n - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double dn = n;
  const double n_pow = std::pow(dn, -s);
  sum += dn * n_pow / (s - 1.0) + 0.5 * n_pow;
  double rising = s;
  double term_pow = n_pow / dn;
  for (int k = 1; k <= 10; ++k) {
    sum += kBernoulliOverFactorial[k - 1] * rising * term_pow;
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    term_pow /= dn * dn;
  }
  return sum;
}

}  // namespace ladderlab::zeta
