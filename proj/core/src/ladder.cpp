// ladder.cpp

#include "ladderlab/ladder.hpp"

#include "ladderlab/errors.hpp"
#include "ladderlab/grid_store.hpp"
#include "ladderlab/zeta_critical.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ladderlab::ladder {
namespace {

constexpr double kE = std::numbers::e;

template <class F>
double solve_increasing(F f, double lo, double hi, double flo, double fhi, const char* what) {
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(46), iters);
  if (iters >= 200) throw ConvergenceError(std::string(what) + ": root solve did not converge", r.second - r.first);
  return 0.5 * (r.first + r.second);
}

double gap_estimate(double T, const LadderConstants& k) { return k.one_minus_c * T / std::log(T); }

void check_height(const hl::ZetaGrid& grid, double T, const char* op) {
  if (!(T >= kMinHeight)) {
    throw DomainError(std::string(op) + ": T must be >= 100, got " + std::to_string(T));
  }
  if (T > grid.t_max()) {
    throw GridExhaustedError(std::string(op) + ": T beyond grid t_max " + std::to_string(grid.t_max()), T);
  }
}

// One reverse step: X > prev with J(X) = F(prev).
double reverse_step(const hl::ZetaGrid& grid, double prev, const LadderConstants& k) {
  const double target = representation(prev, k);
  auto f = [&](double X) { return hl::j_integral(grid, X) - target; };
  const double flo = f(prev);
  if (!(flo < 0.0)) {
    throw ConvergenceError("reverse_iterate: phi1(T) >= T, no bracket at T=" + std::to_string(prev), flo);
  }
  const double gap = gap_estimate(prev, k);
  double hi = prev + 4.0 * gap;
  for (int attempt = 0;; ++attempt) {
    if (hi > grid.t_max()) {
      if (f(grid.t_max()) >= 0.0) {
        hi = grid.t_max();
      } else {
        const double needed = std::max(prev + 1.5 * gap, grid.t_max() + gap);
        throw GridExhaustedError("reverse_iterate: grid ends at " + std::to_string(grid.t_max()) +
                                     ", need about " + std::to_string(needed),
                                 needed);
      }
    }
    const double fhi = f(hi);
    if (fhi >= 0.0) return solve_increasing(f, prev, hi, flo, fhi, "reverse_iterate");
    if (attempt > 8) throw ConvergenceError("reverse_iterate: bracket expansion failed", fhi);
    hi = prev + 2.0 * (hi - prev);
  }
}

}  // namespace

double representation(double y, const LadderConstants& k) {
  return y * std::log(y) + (k.c - kLnTwoPi) * y + k.c0;
}

double phi1(const hl::ZetaGrid& grid, double T, const LadderConstants& k) {
  check_height(grid, T, "phi1");
  const double J = hl::j_integral(grid, T);
  auto f = [&](double y) { return representation(y, k) - J; };
  const double flo = f(kE);
  if (!(flo < 0.0)) throw DomainError("phi1: J(T) below F(e), T under supported range");
  double hi = T;
  double fhi = f(hi);
  for (int i = 0; fhi < 0.0; ++i) {
    if (i > 60) throw ConvergenceError("phi1: no upper bracket", fhi);
    hi *= 1.5;
    fhi = f(hi);
  }
  const double y = solve_increasing(f, kE, hi, flo, fhi, "phi1");
  const double residual = std::abs(f(y)) / J;
  if (residual > 1e-10) throw ConvergenceError("phi1: residual above 1e-10", residual);
  return y;
}

LadderTable reverse_iterate(const hl::ZetaGrid& grid, double T, int r, const LadderConstants& k) {
  if (r < 1 || r > kMaxReverseDepth) throw DomainError("reverse_iterate: r must be in [1, 10]");
  check_height(grid, T, "reverse_iterate");
  LadderTable table;
  table.base_T = T;
  table.k = r;
  table.forward = {T};
  table.reverse = {T};
  for (int j = 1; j <= r; ++j) table.reverse.push_back(reverse_step(grid, table.reverse.back(), k));
  return table;
}

LadderTable reverse_iterate(hl::GridStore& store, double tol, double T, int r,
                            const LadderConstants& k) {
  double height = std::max(T, kMinHeight);
  for (int attempt = 0; attempt < 4 * kMaxReverseDepth; ++attempt) {
    const auto grid = store.ensure(height, tol);
    try {
      return reverse_iterate(grid, T, r, k);
    } catch (const GridExhaustedError& e) {
      height = std::max(e.needed(), grid.t_max() * 1.01);
    }
  }
  throw GridExhaustedError("reverse_iterate: automatic extension did not reach the iterate", height);
}

LadderTable forward_iterate(const hl::ZetaGrid& grid, double T, int k, const LadderConstants& consts) {
  if (k < 1) throw DomainError("forward_iterate: k must be >= 1");
  check_height(grid, T, "forward_iterate");
  LadderTable table;
  table.base_T = T;
  table.k = k;
  table.forward = {T};
  table.reverse = {T};
  for (int j = 1; j <= k; ++j) {
    const double prev = table.forward.back();
    if (prev < kMinHeight) {
      throw DomainError("forward_iterate: iterate " + std::to_string(j - 1) + " fell below 100");
    }
    table.forward.push_back(phi1(grid, prev, consts));
  }
  if (table.forward.back() < kMinHeight) {
    throw DomainError("forward_iterate: iterate " + std::to_string(k) + " fell below 100");
  }
  return table;
}

double z_tilde_sq(const hl::ZetaGrid& grid, double t, const LadderConstants& k) {
  check_height(grid, t, "z_tilde_sq");
  const double y = phi1(grid, t, k);
  return zeta::modulus_sq(t) / (std::log(y) + 1.0 + k.c - kLnTwoPi);
}

double c0_sensitivity(const hl::ZetaGrid& grid, double T, double dc0, const LadderConstants& k) {
  LadderConstants shifted = k;
  shifted.c0 += dc0;
  return std::abs(phi1(grid, T, shifted) - phi1(grid, T, k));
}

GapDiagnostics gap_diagnostics(const hl::ZetaGrid& grid, double T, int r,
                               const arith::PrimeTable& primes, const LadderConstants& k) {
  const auto table = reverse_iterate(grid, T, r, k);
  if (table.reverse.back() > static_cast<double>(primes.limit())) {
    throw DomainError("gap_diagnostics: prime table too short for the last iterate");
  }
  GapDiagnostics out;
  out.T = T;
  out.phi1_T = phi1(grid, T, k);
  for (int j = 1; j <= r; ++j) {
    GapRow row;
    row.j = j;
    row.lower = table.reverse[static_cast<std::size_t>(j - 1)];
    row.upper = table.reverse[static_cast<std::size_t>(j)];
    row.pi_upper = static_cast<double>(primes.count(row.upper));
    row.ratio = (row.upper - row.lower) / (k.one_minus_c * row.pi_upper);
    out.rows.push_back(row);
  }
  const double pi_T = static_cast<double>(primes.count(T));
  out.descent_ratio = (T - out.phi1_T) / (k.one_minus_c * pi_T);
  out.complementarity = (out.phi1_T + k.one_minus_c * pi_T) / T;
  return out;
}

}  // namespace ladderlab::ladder
