// quadrature.hpp (internal)
//
// Thin wrappers over Boost.Math fixed rules.

#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace ladderlab::detail {

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;  // |K15 - G7|
};

// Single 15-point Kronrod panel with its embedded Gauss estimate.
template <class F>
PanelEstimate kronrod15(F&& f, double a, double b) {
  PanelEstimate out;
  if (a == b) return out;
  out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 0, 0.0, &out.error);
  return out;
}

template <int N, class F>
double gauss_legendre(F&& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss<double, N>::integrate(f, a, b);
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace ladderlab::detail
