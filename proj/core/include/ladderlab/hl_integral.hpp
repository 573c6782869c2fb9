// hl_integral.hpp
//
// J(T) = integral_0^T |zeta(1/2+it)|^2 dt on a cumulative, extendable grid.
//
// [0, 10] is covered by a fixed constant (see head_value()); above that the
// line is cut into unit panels [10+k, 11+k], each refined adaptively with a
// 15-point Gauss-Kronrod rule until |K15 - G7| <= tol * max(|K15|, width).
// The leaf endpoints are the grid nodes. Each node stores (t, |zeta|^2,
// J(t)); J between nodes is the stored value plus one Kronrod panel.
//
// Because panels are independent and t_max is rounded up to whole panels,
// a grid extended from 500 to 1000 is bitwise equal to one built to 1000.
//
// Cache layout (all little-endian):
//   offset  0  char[8]  magic "LLZGRID1"
//           8  uint32   format version
//          12  uint32   reserved (0)
//          16  float64  t_max
//          24  float64  tol
//          32  uint64   node count n
//          40  n records of float64 (t, modulus_sq, cumulative)
// A JSON sidecar "<file>.json" holds build metadata. Writers take an
// exclusive flock on "<file>.lock" and replace the file atomically.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ladderlab::hl {

struct GridNode {
  double t = 0.0;
  double modulus_sq = 0.0;
  double cumulative = 0.0;
};

struct BuildOptions {
  int threads = 0;  // 0: OpenMP default
  std::size_t node_budget = 64'000'000;
  // Z^2 is analytic, so leaves never need to be narrow; the floor only
  // stops runaway splitting when rounding noise exceeds tol.
  double min_width = 1.0 / 1024.0;
};

struct BuildStats {
  double seconds = 0.0;
  int threads = 1;
  double achieved_tol = 0.0;
};

class ZetaGrid {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;
  static constexpr double kTMin = 10.0;

  double t_min() const noexcept { return kTMin; }
  double t_max() const noexcept { return t_max_; }
  double tol() const noexcept { return tol_; }
  std::uint32_t version() const noexcept { return kFormatVersion; }
  std::string step_policy() const;
  std::span<const GridNode> nodes() const noexcept { return *nodes_; }
  const BuildStats& stats() const noexcept { return stats_; }

  // J(10), evaluated once to 40 digits offline.
  static double head_value() noexcept;

  // Same grid with every leaf split in half (step refinement check).
  ZetaGrid halved(const BuildOptions& options = {}) const;

  friend ZetaGrid build_grid(double, double, const BuildOptions&);
  friend ZetaGrid extend(const ZetaGrid&, double, const BuildOptions&);
  friend ZetaGrid load_grid(const std::filesystem::path&);

 private:
  ZetaGrid() = default;
  double t_max_ = 0.0;
  double tol_ = 0.0;
  BuildStats stats_;
  std::shared_ptr<const std::vector<GridNode>> nodes_;
};

// t_max >= 100, 1e-10 <= tol <= 1e-3. t_max is rounded up to a whole panel.
ZetaGrid build_grid(double t_max, double tol, const BuildOptions& options = {});

// New grid reaching new_t_max; existing nodes are reused as they are.
ZetaGrid extend(const ZetaGrid& grid, double new_t_max, const BuildOptions& options = {});

// 10 <= T <= grid.t_max().
double j_integral(const ZetaGrid& grid, double T);
double j_segment(const ZetaGrid& grid, double T1, double T2);

struct HliComparison {
  double T = 0.0;
  double j_value = 0.0;
  double main_term = 0.0;
  double remainder = 0.0;
  double exponent_witness = 0.0;  // |R(T)| / T^(1/3 + delta)
  double delta = 0.0;
};

// T ln T - (1 + ln 2pi - 2c) T.
double hli_main_term(double T);

// 100 <= T <= grid.t_max(), 0 < delta <= 0.2.
HliComparison hli_compare(const ZetaGrid& grid, double T, double delta);

void save_grid(const ZetaGrid& grid, const std::filesystem::path& path);
ZetaGrid load_grid(const std::filesystem::path& path);

}  // namespace ladderlab::hl
