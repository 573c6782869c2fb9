// ladder.hpp
//
// phi1(T) is the y > e solving
//
//     y ln y + (c - ln 2pi) y + c0 = J(T),
//
// with c Euler's constant and c0 configurable (default 0). The left side is
// strictly increasing for y > e, so phi1 is a monotone inversion. Reverse
// iterates satisfy phi1(T^r) = T^(r-1), found by solving J(X) = F(T^(r-1))
// with a bracket taken from the gap law (1-c) T / ln T, inflated 4x.
// Differentiating the defining equation gives
//
//     Ztilde^2(t) = |zeta(1/2+it)|^2 / (ln phi1(t) + 1 + c - ln 2pi).

#pragma once

#include "ladderlab/arithmetic.hpp"
#include "ladderlab/constants.hpp"
#include "ladderlab/hl_integral.hpp"

#include <vector>

namespace ladderlab::hl {
class GridStore;
}

namespace ladderlab::ladder {

struct LadderConstants {
  double c = kEulerGamma;
  double c0 = 0.0;
  double one_minus_c = kOneMinusEuler;

  static LadderConstants with_c0(double c0) {
    LadderConstants k;
    k.c0 = c0;
    return k;
  }
};

// Relative tolerance of every root solve.
inline constexpr double kSolverTol = 1e-12;
inline constexpr double kMinHeight = 100.0;
inline constexpr int kMaxReverseDepth = 10;

struct LadderTable {
  double base_T = 0.0;
  std::vector<double> forward;  // phi1^0(T) = T, phi1^1(T), ... (decreasing)
  std::vector<double> reverse;  // T^0 = T, T^1, ... (increasing)
  double solver_tol = kSolverTol;
  int k = 0;
};

// y ln y + (c - ln 2pi) y + c0.
double representation(double y, const LadderConstants& k = {});

// 100 <= T <= grid.t_max().
double phi1(const hl::ZetaGrid& grid, double T, const LadderConstants& k = {});

// 1 <= r <= 10. GridExhaustedError (with the height needed) when the grid
// is too short.
LadderTable reverse_iterate(const hl::ZetaGrid& grid, double T, int r,
                            const LadderConstants& k = {});
// Same, extending the store's grid as far as needed.
LadderTable reverse_iterate(hl::GridStore& store, double tol, double T, int r,
                            const LadderConstants& k = {});

// phi1 applied k times; every iterate must stay >= 100.
LadderTable forward_iterate(const hl::ZetaGrid& grid, double T, int k,
                            const LadderConstants& consts = {});

// 100 <= t <= grid.t_max().
double z_tilde_sq(const hl::ZetaGrid& grid, double t, const LadderConstants& k = {});

// |phi1(T; c0 + dc0) - phi1(T; c0)|.
double c0_sensitivity(const hl::ZetaGrid& grid, double T, double dc0,
                      const LadderConstants& k = {});

struct GapRow {
  int j = 0;
  double lower = 0.0;   // T^(j-1)
  double upper = 0.0;   // T^j
  double pi_upper = 0.0;
  double ratio = 0.0;   // (T^j - T^(j-1)) / ((1-c) pi(T^j))
};

struct GapDiagnostics {
  double T = 0.0;
  double phi1_T = 0.0;
  std::vector<GapRow> rows;
  double descent_ratio = 0.0;     // (T - phi1(T)) / ((1-c) pi(T))
  double complementarity = 0.0;   // (phi1(T) + (1-c) pi(T)) / T
};

GapDiagnostics gap_diagnostics(const hl::ZetaGrid& grid, double T, int r,
                               const arith::PrimeTable& primes, const LadderConstants& k = {});

}  // namespace ladderlab::ladder
