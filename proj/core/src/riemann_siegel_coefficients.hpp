// riemann_siegel_coefficients.hpp (internal)
//
// Power series in x = p - 1/2 of the Riemann-Siegel correction functions
// C0..C4, built once from Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
// in 100-digit arithmetic and rounded to double.

#pragma once

#include <array>
#include <vector>

namespace ladderlab::zeta::detail {

inline constexpr int kCorrectionTerms = 5;  // C0..C4

struct RsCoefficients {
  std::array<std::vector<double>, kCorrectionTerms> series;
};

const RsCoefficients& rs_coefficients();

// Evaluates C_k at fractional part p in [0, 1).
double rs_correction(int k, double p);

}  // namespace ladderlab::zeta::detail
