// experiments.hpp
//
// Finite-tau experiments for the ladder-windowed limit statements. Each one
// returns a ConvergenceReport whose rows approach a known target as tau
// grows; the numeric side can only witness trends, while Fermat verdicts
// ("q != 1") are decided with exact big-integer arithmetic.
//
// Notation used below: for x > 0 and tau > 0 put T = x tau / (1-c) and let
// T^1 be the first reverse iterate of T. Then
//   zeta functional     (1/tau) int_T^{T^1} |zeta|^2            -> x
//   divisor functional  (1/tau) (D(T^1) - D(T))                  -> x
//   log functionals     ln(F) / ln tau with T = tau^x, F the zeta segment
//                       or the D increment over [T, T^1]         -> x
//   S1 functional       (1/rho) int_{phi1(u)}^u {s|zeta|^2 + (1-c)|S1|^(2l)},
//                       u = x rho / ((1-c) s), s = sigma(l)       -> x
//
// Domain guards use the threshold T0 (default 1e3):
//   zeta/divisor functionals: tau >= (1-c) T0 / x
//   log functionals:          tau >= max(T0^(1/x), T0)
//   sigma fit:                tau >  T^2(T0)
//   S1 functional:            rho >  (1-c) s T^2(T0) / x
// Heights beyond LabConfig::max_height raise InfeasibleError.

#pragma once

#include "ladderlab/argument_track.hpp"
#include "ladderlab/arithmetic.hpp"
#include "ladderlab/grid_store.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/report.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ladderlab::experiments {

struct LabConfig {
  std::filesystem::path cache_path;  // empty: in-memory grid only
  double tol = 1e-6;
  double T0 = 1e3;
  double c0 = 0.0;
  int threads = 0;
  double max_height = 1.3e6;
  double trend_floor = 0.02;
  bool allow_build = true;
};

// Shared state of one experiment session: the grid store, the argument
// track and the configuration. Not thread-safe; experiments parallelise
// internally.
class Lab {
 public:
  explicit Lab(LabConfig config = {});

  const LabConfig& config() const noexcept { return config_; }
  ladder::LadderConstants constants() const;

  // Grid reaching at least t_max (loaded, extended or built).
  const hl::ZetaGrid& grid(double t_max);
  // Reverse iterates T^0..T^r of T.
  ladder::LadderTable reverse_table(double T, int r);
  double reverse(double T, int r = 1);
  double phi1(double T);
  double segment(double a, double b);
  // S(t), S1(t) track reaching at least t_max.
  const zeta::ArgumentTrack& track(double t_max);
  // T^2(T0), the lower edge used by the S1 guards.
  double second_iterate_of_T0();

 private:
  void check_height(double t) const;

  LabConfig config_;
  hl::GridStore store_;
  std::optional<hl::ZetaGrid> grid_;
  std::unique_ptr<zeta::ArgumentTrack> track_;
};

ConvergenceReport exp_linear_increment(Lab& lab, std::span<const double> T_list, int r);
ConvergenceReport exp_divisor_increment(Lab& lab, std::span<const double> T_list, int r);
ConvergenceReport exp_scaled_zeta_functional(Lab& lab, double x, std::span<const double> tau_list);
ConvergenceReport exp_scaled_divisor_functional(Lab& lab, double x,
                                                std::span<const double> tau_list);
// Divisor functional against the zeta functional at the same tau.
ConvergenceReport exp_divisor_zeta_crosscheck(Lab& lab, double x, std::span<const double> tau_list);
ConvergenceReport exp_log_functional(Lab& lab, double x, std::span<const double> tau_list,
                                     bool use_divisor);

struct SigmaEstimate {
  int l = 0;
  double sigma_hat = 0.0;
  double residual_spread = 0.0;  // max |sigma_i - sigma_hat|
  std::vector<double> tau;
  std::vector<double> sigma_i;   // per-checkpoint solutions
};

// Weighted least squares for sigma in
//   sigma int_{phi1(tau)}^tau |zeta|^2 + (1-c) int |S1|^(2l) = (1-c) sigma tau.
// 1 <= l <= 3.
SigmaEstimate estimate_sigma(Lab& lab, int l, std::span<const double> tau_list);
// Left side over tau against (1-c) sigma.
ConvergenceReport exp_sigma_identity(Lab& lab, int l, double sigma, std::span<const double> tau_list);
ConvergenceReport exp_s1_functional(Lab& lab, double x, int l, std::span<const double> rho_list,
                                    double sigma);

enum class Functional { d_linear, d_log, zeta_linear, zeta_log, s1 };
std::string_view to_string(Functional f) noexcept;

// Runs the chosen functional at x = q and attaches exact notes:
//   q, gap (= |q-1|), exact_verdict ("q=... != 1"), separation
//   ("numeric separation" or "exact-only separation").
// sigma is used only by Functional::s1 (<= 0 means: fit it first).
ConvergenceReport fermat_condition_check(Lab& lab, const arith::FermatRational& fr,
                                         std::span<const double> tau_list, Functional functional,
                                         int l = 1, double sigma = 0.0);

// Rows: value L1 L2, target L3 (zeta functionals at a, q and a q).
ConvergenceReport exp_product_identity(Lab& lab, double a, const arith::FermatRational& fr,
                                       std::span<const double> tau_list);
// Divisor functional at x = Gamma(x0) (depth 1) or Gamma(Gamma(x0)) (depth 2).
ConvergenceReport exp_gamma_substitution(Lab& lab, double x0, int depth,
                                         std::span<const double> tau_list);
// Divisor functional at x = D(x0).
ConvergenceReport exp_dirichlet_return(Lab& lab, double x0, std::span<const double> tau_list);

// Gap law rows: (T^1 - T) / ((1-c) pi(T^1)); notes carry the descent
// ratio and the complementarity ratio at the last T.
ConvergenceReport exp_gap_laws(Lab& lab, std::span<const double> T_list);
// Rows: J(T) against the main term; notes carry |R|/T and the witness.
ConvergenceReport exp_hli(Lab& lab, std::span<const double> T_list, double delta);

// Parses "x,y,z,n".
arith::FermatRational parse_fermat(const std::string& text);
std::string fermat_label(const arith::FermatRational& fr);

// The whole suite with explicit tau lists (quick: reduced lists).
std::vector<ConvergenceReport> run_suite(Lab& lab, bool quick);

}  // namespace ladderlab::experiments
