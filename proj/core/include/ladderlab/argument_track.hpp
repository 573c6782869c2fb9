// argument_track.hpp
//
// Continuous branch of arg zeta(1/2 + iu) along the critical line.
//
// Since zeta(1/2+iu) = exp(-i theta(u)) Z(u), the continuously tracked
// argument equals -theta(u) plus pi for every sign change of Z met so far.
// With the normalisation S(0+) = -1 this gives
//
//     S(t)  = (1/pi) arg zeta(1/2+it) = N(t) - 1 - theta(t)/pi,
//     S1(t) = integral_0^t S(u) du,
//
// where N(t) counts the zeros 0 < gamma <= t found by the scan. The scan starts
// at u = 2 and advances with a step that keeps |delta theta| <= pi/8. A local
// minimum of |Z| without a sign change triggers a Brent search for a hidden
// pair of zeros. After the scan, the mean of S between consecutive zeros is
// checked block-wise. A missed pair shifts it by 2; the region is rescanned
// with finer steps, and TrackingError is raised if that does not fix it.

#pragma once

#include <cstddef>
#include <vector>

namespace ladderlab::zeta {

struct ArgumentSample {
  double t = 0.0;
  double s_value = 0.0;
  double s1_value = 0.0;
};

struct TrackOptions {
  double max_step = 0.25;
  // Largest tolerated |mean S| over a block of consecutive zero gaps.
  double mean_bound = 0.75;
  std::size_t mean_block = 200;
  // Rescans allowed per region failing the mean check; attempt k scans with
  // max_step / 8^k.
  int max_repairs = 4;
};

class ArgumentTrack {
 public:
  static ArgumentTrack build(double t_max, const TrackOptions& options = {});

  double t_max() const noexcept { return t_max_; }
  double max_step() const noexcept { return options_.max_step; }
  const std::vector<double>& zeros() const noexcept { return zeros_; }

  // Number of zeros gamma with gamma <= t.
  std::size_t zero_count(double t) const;

  double s(double t) const;
  double s1(double t) const;

  // integral_a^b |S1(u)|^power du for 0 <= a <= b <= t_max.
  double integrate_s1_power(double a, double b, int power) const;

 private:
  ArgumentTrack() = default;
  void check(double t) const;
  void fill_s1_table();
  double s1_piece(std::size_t k, double from, double to) const;

  TrackOptions options_;
  double t_max_ = 0.0;
  std::vector<double> zeros_;
  std::vector<double> s1_at_zero_;
};

// S(t) and S1(t) at 0 < t <= track.t_max().
ArgumentSample s_function(const ArgumentTrack& track, double t);

}  // namespace ladderlab::zeta
