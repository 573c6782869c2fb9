// zeta_critical.hpp
//
// Riemann zeta on the critical line s = 1/2 + it and on the real axis s > 1.
//
// Z(t) = exp(i*theta(t)) * zeta(1/2 + it) is real, so |zeta(1/2+it)|^2 = Z(t)^2.
// Two evaluation paths are used:
//   * t >= 50: Riemann-Siegel main sum over n <= floor(sqrt(t/2pi)) plus the
//     correction terms C0..C4 (four corrections beyond the leading C0).
//   * 10 <= t < 50: Euler-Maclaurin summation of zeta(1/2+it) in complex double.
//
// Error estimates (CriticalSample::est_abs_error bounds |Z^2 - exact|):
//   * Riemann-Siegel: truncation after C4 is bounded by 0.017 t^(-11/4) for
//     t >= 200 (Gabcke); the same constant scaled by 8 is used on [50, 200).
//     A phase rounding term 4 eps |theta| * 2 sqrt(N) is added.
//   * Euler-Maclaurin: magnitude of the first omitted Bernoulli term times
//     |s + 2m + 1| / (sigma + 2m + 1), plus 1e-14 rounding.
// The bound on Z is converted to a bound on Z^2 as (2|Z| + e) e.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ladderlab::zeta {

enum class Method { riemann_siegel, euler_maclaurin };

std::string_view to_string(Method m) noexcept;

struct CriticalSample {
  double t = 0.0;
  double z_value = 0.0;
  double modulus_sq = 0.0;
  Method method = Method::riemann_siegel;
  double est_abs_error = 0.0;
};

// Height where the engine switches from Euler-Maclaurin to Riemann-Siegel.
inline constexpr double kSplitHeight = 50.0;

// Riemann-Siegel theta by its asymptotic series (five correction terms).
// Domain t > 1; absolute error below 1e-12 for t >= 10.
double theta(double t);

// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log(pi), valid for every t >= 0.
double theta_exact(double t);

// Principal-branch-continuous log Gamma for Re z > 0.
std::complex<double> log_gamma(std::complex<double> z);

// zeta(s) by Euler-Maclaurin summation; intended for |Im s| <= 60, Re s >= 0.
std::complex<double> zeta_euler_maclaurin(std::complex<double> s, double* est_error = nullptr);

// Z(t) for t >= 10.
CriticalSample z_function(double t);

// Z(t) only; same arithmetic as z_function.
double z_value(double t);

// |zeta(1/2+it)|^2 only; same arithmetic as z_function.
double modulus_sq(double t);

// Pointwise-identical batch evaluation. ts must be ascending and >= 10;
// violations throw BatchDomainError with the first offending index.
// threads <= 0 uses the OpenMP default.
std::vector<CriticalSample> modulus_sq_batch(std::span<const double> ts, int threads = 0);

// zeta(s) for real s >= 1.1, absolute error <= 1e-10.
double zeta_real_axis(double s);

}  // namespace ladderlab::zeta
