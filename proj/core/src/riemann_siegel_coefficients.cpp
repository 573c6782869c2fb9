// riemann_siegel_coefficients.cpp
//
// With p = 1/2 + x,
//   Psi = cos(2 pi x^2 - 5 pi / 8) / (-cos(2 pi x)),
// an entire function. Its Taylor series is obtained by series division; the
// correction functions are the classical combinations
//   C0 = Psi
//   C1 = -Psi'''/(96 pi^2)
//   C2 = Psi''/(64 pi^2) + Psi^(6)/(18432 pi^4)
//   C3 = -Psi'/(64 pi^2) - Psi^(5)/(3840 pi^4) - Psi^(9)/(5308416 pi^6)
//   C4 = Psi/(128 pi^2) + 19 Psi^(4)/(24576 pi^4) + 11 Psi^(8)/(5898240 pi^6)
//        + Psi^(12)/(2038431744 pi^8)

#include "riemann_siegel_coefficients.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

namespace ladderlab::zeta::detail {
namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

constexpr int kSeriesLength = 96;
constexpr int kMaxDerivative = 12;

std::vector<Real> psi_series() {
  const Real pi = boost::math::constants::pi<Real>();
  const Real two_pi = 2 * pi;
  const int n = kSeriesLength + kMaxDerivative;

  // numerator cos(2 pi x^2 - 5pi/8) = cos(5pi/8) cos(2 pi x^2) + sin(5pi/8) sin(2 pi x^2)
  const Real ca = cos(5 * pi / 8);
  const Real sa = sin(5 * pi / 8);
  std::vector<Real> num(n, Real(0));
  {
    Real term = 1;  // (2pi)^j / j!
    for (int j = 0; 2 * j < n; ++j) {
      if (j > 0) term = term * two_pi / j;
      const int power = 2 * j;
      const int sign = ((j / 2) % 2 == 0) ? 1 : -1;
      if (j % 2 == 0) {
        num[power] += ca * sign * term;
      } else {
        num[power] += sa * sign * term;
      }
    }
  }
  std::vector<Real> den(n, Real(0));
  {
    Real term = 1;
    for (int j = 0; j < n; ++j) {
      if (j > 0) term = term * two_pi / j;
      if (j % 2 == 0) den[j] = ((j / 2) % 2 == 0 ? 1 : -1) * term;
    }
  }
  std::vector<Real> q(n, Real(0));
  for (int k = 0; k < n; ++k) {
    Real acc = num[k];
    for (int j = 0; j < k; ++j) acc -= q[j] * den[k - j];
    q[k] = acc / den[0];
  }
  for (auto& c : q) c = -c;
  return q;
}

// Series of the d-th derivative, truncated to kSeriesLength terms.
std::vector<Real> derivative(const std::vector<Real>& a, int d) {
  std::vector<Real> out(kSeriesLength, Real(0));
  for (int j = 0; j < kSeriesLength; ++j) {
    Real f = a[j + d];
    for (int i = 1; i <= d; ++i) f *= (j + i);
    out[j] = f;
  }
  return out;
}

RsCoefficients build() {
  const Real pi = boost::math::constants::pi<Real>();
  const Real pi2 = pi * pi;
  const Real pi4 = pi2 * pi2;
  const Real pi6 = pi4 * pi2;
  const Real pi8 = pi4 * pi4;
  const auto psi = psi_series();
  std::array<std::vector<Real>, kMaxDerivative + 1> d;
  for (int k = 0; k <= kMaxDerivative; ++k) d[k] = derivative(psi, k);

  std::array<std::vector<Real>, kCorrectionTerms> c;
  for (auto& v : c) v.assign(kSeriesLength, Real(0));
  for (int j = 0; j < kSeriesLength; ++j) {
    c[0][j] = d[0][j];
    c[1][j] = -d[3][j] / (96 * pi2);
    c[2][j] = d[2][j] / (64 * pi2) + d[6][j] / (18432 * pi4);
    c[3][j] = -d[1][j] / (64 * pi2) - d[5][j] / (3840 * pi4) - d[9][j] / (5308416 * pi6);
    c[4][j] = d[0][j] / (128 * pi2) + 19 * d[4][j] / (24576 * pi4) +
              11 * d[8][j] / (5898240 * pi6) + d[12][j] / (Real(2038431744) * pi8);
  }

  RsCoefficients out;
  for (int k = 0; k < kCorrectionTerms; ++k) {
    // Drop the tail once terms cannot matter on |x| <= 1/2.
    int last = kSeriesLength - 1;
    while (last > 0 && abs(c[k][last]) * pow(Real(0.5), last) < Real(1e-22)) --last;
    out.series[k].resize(last + 1);
    for (int j = 0; j <= last; ++j) out.series[k][j] = static_cast<double>(c[k][j]);
  }
  return out;
}

}  // namespace

const RsCoefficients& rs_coefficients() {
  static const RsCoefficients table = build();
  return table;
}

double rs_correction(int k, double p) {
  const auto& s = rs_coefficients().series[k];
  const double x = p - 0.5;
  double acc = 0.0;
  for (auto it = s.rbegin(); it != s.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace ladderlab::zeta::detail
