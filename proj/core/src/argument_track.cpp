// argument_track.cpp

#include "ladderlab/argument_track.hpp"

#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/zeta_critical.hpp"
#include "quadrature.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace ladderlab::zeta {
namespace {

constexpr double kScanStart = 2.0;

// Z(u) on the whole scan range; below 10 through Euler-Maclaurin.
double z_any(double u) {
  if (u >= kCriticalMinT) return z_value(u);
  const double th = theta_exact(u);
  const auto zeta = zeta_euler_maclaurin({0.5, u});
  return std::cos(th) * zeta.real() - std::sin(th) * zeta.imag();
}

double theta_any(double u) { return u > kCriticalMinT ? theta(u) : theta_exact(u); }

double scan_step(double u, double max_step) {
  const double dtheta = 0.5 * std::abs(std::log(u / kTwoPi));
  return std::min(max_step, (kPi / 8.0) / std::max(dtheta, 1e-3));
}

double refine_zero(double a, double fa, double b, double fb) {
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      [](double u) { return z_any(u); }, a, b, fa, fb,
      boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

// Sign-change scan of Z on [a, b], appending zeros to out. A local minimum of
// |Z| without a crossing triggers a search for a hidden pair.
void scan_range(double a, double b, double max_step, std::vector<double>& out) {
  double u0 = a;
  double z0 = z_any(u0);
  bool have_prev = false;
  double up = 0.0;
  double zp = 0.0;

  while (u0 < b) {
    const double u1 = std::min(u0 + scan_step(u0, max_step), b);
    double z1 = z_any(u1);
    if (z1 == 0.0) z1 = z_any(std::nextafter(u1, b + 1.0));

    if (std::signbit(z0) != std::signbit(z1)) {
      out.push_back(refine_zero(u0, z0, u1, z1));
      have_prev = false;
    } else {
      if (have_prev && std::abs(z0) < std::abs(zp) && std::abs(z0) < std::abs(z1)) {
        const double sgn = std::signbit(z0) ? -1.0 : 1.0;
        std::uintmax_t iters = 200;
        const auto m = boost::math::tools::brent_find_minima(
            [sgn](double u) { return sgn * z_any(u); }, up, u1, 40, iters);
        if (m.second < 0.0) {
          out.push_back(refine_zero(up, zp, m.first, sgn * m.second));
          out.push_back(refine_zero(m.first, sgn * m.second, u1, z1));
        } else if (m.second < 1e-12) {
          throw TrackingError("ArgumentTrack: unresolved near-double zero", m.first);
        }
      }
      up = u0;
      zp = z0;
      have_prev = true;
    }
    u0 = u1;
    z0 = z1;
  }
}

}  // namespace

ArgumentTrack ArgumentTrack::build(double t_max, const TrackOptions& options) {
  if (!(t_max >= kCriticalMinT)) {
    throw DomainError("ArgumentTrack: t_max must be >= 10");
  }
  if (!(options.max_step > 0.0)) throw DomainError("ArgumentTrack: max_step must be > 0");

  ArgumentTrack track;
  track.options_ = options;
  track.t_max_ = t_max;
  auto& zeros = track.zeros_;
  scan_range(kScanStart, t_max, options.max_step, zeros);

  // Zero-counting cross-check: the average of S over a block of gaps stays
  // near 0; a missed pair shifts it by 2. A failing region is rescanned with
  // finer steps before giving up.
  const std::size_t block = std::max<std::size_t>(options.mean_block, 2);
  std::size_t checked_from = 0;
  // Repairs escalate per region: each retry at the same spot scans 8x finer.
  double last_a = -1.0;
  int attempts = 0;
  for (;;) {
    track.fill_s1_table();
    std::size_t bad = zeros.size();
    for (std::size_t start = checked_from; start + 20 < zeros.size(); start += block) {
      const std::size_t end = std::min(start + block, zeros.size() - 1);
      const double mean = (track.s1_at_zero_[end] - track.s1_at_zero_[start]) /
                          (zeros[end] - zeros[start]);
      if (std::abs(mean) > options.mean_bound) {
        bad = start;
        break;
      }
    }
    if (bad == zeros.size()) break;

    const std::size_t lo = bad >= block ? bad - block : 0;
    const std::size_t hi = std::min(bad + 2 * block, zeros.size() - 1);
    const double a = zeros[lo];
    const double b = zeros[hi];
    attempts = (a == last_a) ? attempts + 1 : 1;
    last_a = a;
    if (attempts > options.max_repairs) {
      throw TrackingError("ArgumentTrack: zero count inconsistent after refinement", a);
    }
    std::vector<double> found;
    scan_range(a, b, options.max_step / std::pow(8.0, attempts), found);
    std::vector<double> merged(zeros.begin(), zeros.begin() + static_cast<std::ptrdiff_t>(lo + 1));
    // a and b are kept from the old list; their re-refined copies may differ
    // by a few ulps and must not be counted twice.
    const double dup = 1e-12 * b;
    for (double z : found) {
      if (z > a + dup && z < b - dup) merged.push_back(z);
    }
    merged.insert(merged.end(), zeros.begin() + static_cast<std::ptrdiff_t>(hi), zeros.end());
    zeros = std::move(merged);
    checked_from = lo >= block ? lo - block : 0;
    checked_from -= checked_from % block;
  }
  return track;
}

void ArgumentTrack::fill_s1_table() {
  s1_at_zero_.resize(zeros_.size());
  if (zeros_.empty()) return;
  s1_at_zero_[0] = s1_piece(0, 0.0, zeros_[0]);
  for (std::size_t i = 1; i < zeros_.size(); ++i) {
    s1_at_zero_[i] = s1_at_zero_[i - 1] + s1_piece(i, zeros_[i - 1], zeros_[i]);
  }
}

void ArgumentTrack::check(double t) const {
  if (!(t > 0.0) || t > t_max_) {
    throw DomainError("ArgumentTrack: t outside (0, " + std::to_string(t_max_) + "]");
  }
}

std::size_t ArgumentTrack::zero_count(double t) const {
  return static_cast<std::size_t>(std::upper_bound(zeros_.begin(), zeros_.end(), t) -
                                  zeros_.begin());
}

double ArgumentTrack::s1_piece(std::size_t k, double from, double to) const {
  // On an interval free of zeros, S(u) = k - 1 - theta(u)/pi.
  const double base = static_cast<double>(k) - 1.0;
  auto s = [base](double u) { return base - theta_any(u) / kPi; };
  detail::CompensatedSum acc;
  const double width = to - from;
  const int pieces = std::max(1, static_cast<int>(std::ceil(width)));
  for (int i = 0; i < pieces; ++i) {
    const double a = from + width * i / pieces;
    const double b = (i + 1 == pieces) ? to : from + width * (i + 1) / pieces;
    acc.add(detail::gauss_legendre<20>(s, a, b));
  }
  return acc.value();
}

double ArgumentTrack::s(double t) const {
  check(t);
  return static_cast<double>(zero_count(t)) - 1.0 - theta_any(t) / kPi;
}

double ArgumentTrack::s1(double t) const {
  check(t);
  const std::size_t n = zero_count(t);
  if (n == 0) return s1_piece(0, 0.0, t);
  return s1_at_zero_[n - 1] + s1_piece(n, zeros_[n - 1], t);
}

double ArgumentTrack::integrate_s1_power(double a, double b, int power) const {
  if (a > b) throw DomainError("integrate_s1_power: a > b");
  if (power < 1) throw DomainError("integrate_s1_power: power must be >= 1");
  if (a < 0.0 || b > t_max_) throw DomainError("integrate_s1_power: range outside track");
  if (a == b) return 0.0;

  detail::CompensatedSum acc;
  double x = a;
  std::size_t k = zero_count(a);
  double s1_x = (a == 0.0) ? 0.0 : s1(a);
  while (x < b) {
    const double next_zero = k < zeros_.size() ? zeros_[k] : b;
    const double y = std::min({b, next_zero, x + 1.0});
    const double s1_start = s1_x;
    const std::size_t count = k;
    auto integrand = [&](double u) {
      return std::pow(std::abs(s1_start + s1_piece(count, x, u)), power);
    };
    acc.add(detail::gauss_legendre<10>(integrand, x, y));
    s1_x = s1_start + s1_piece(count, x, y);
    if (y == next_zero && k < zeros_.size()) ++k;
    x = y;
  }
  return acc.value();
}

ArgumentSample s_function(const ArgumentTrack& track, double t) {
  return {t, track.s(t), track.s1(t)};
}

}  // namespace ladderlab::zeta
