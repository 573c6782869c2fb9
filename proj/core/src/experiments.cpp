// experiments.cpp

#include "ladderlab/experiments.hpp"

#include "ladderlab/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ladderlab::experiments {
namespace {

hl::BuildOptions build_options(const LabConfig& c) {
  hl::BuildOptions o;
  o.threads = c.threads;
  return o;
}

std::string num(double x) { return format_number(x); }

void require_ascending(std::span<const double> xs, const char* op) {
  if (xs.empty()) throw DomainError(std::string(op) + ": empty checkpoint list");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || xs[i] <= 0.0) {
      throw BatchDomainError(std::string(op) + ": checkpoints must be positive", i);
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw BatchDomainError(std::string(op) + ": checkpoints must be strictly ascending", i);
    }
  }
}

void require_positive(double x, const char* what, const char* op) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(op) + ": " + what + " must be positive and finite");
  }
}

// tau >= (1-c) T0 / x for every checkpoint.
void guard_scaled(const Lab& lab, double x, std::span<const double> taus, const char* op) {
  const double floor = kOneMinusEuler * lab.config().T0 / x;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (taus[i] < floor) {
      throw BatchDomainError(std::string(op) + ": tau=" + num(taus[i]) + " below (1-c) T0 / x = " +
                                 num(floor),
                             i);
    }
  }
}

double divisor_increment(double a, double b) {
  const arith::BigInt diff = arith::divisor_summatory(b) - arith::divisor_summatory(a);
  return diff.convert_to<double>();
}

struct FunctionalPoint {
  double value;
  double T;
};

FunctionalPoint zeta_point(Lab& lab, double x, double tau) {
  const double T = x * tau / kOneMinusEuler;
  const double T1 = lab.reverse(T, 1);
  return {lab.segment(T, T1) / tau, T};
}

FunctionalPoint divisor_point(Lab& lab, double x, double tau) {
  const double T = x * tau / kOneMinusEuler;
  const double T1 = lab.reverse(T, 1);
  return {divisor_increment(T, T1) / tau, T};
}

// Log functionals evaluate at T = tau^x.
double log_height(const Lab& lab, double x, double tau) {
  const double T = std::exp(x * std::log(tau));
  if (!std::isfinite(T) || T > lab.config().max_height) {
    throw InfeasibleError("log functional: T = tau^x = " + num(T) + " beyond max_height " +
                          num(lab.config().max_height));
  }
  return T;
}

std::string rational_text(const arith::BigRational& q) {
  std::ostringstream s;
  s << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) s << '/' << boost::multiprecision::denominator(q);
  return s.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Lab

Lab::Lab(LabConfig config) : config_(std::move(config)), store_(config_.cache_path, build_options(config_)) {
  if (!(config_.T0 >= ladder::kMinHeight)) throw DomainError("Lab: T0 must be >= 100");
  if (!(config_.max_height > config_.T0)) throw DomainError("Lab: max_height must exceed T0");
}

ladder::LadderConstants Lab::constants() const { return ladder::LadderConstants::with_c0(config_.c0); }

void Lab::check_height(double t) const {
  if (!(t <= config_.max_height)) {
    throw InfeasibleError("height " + num(t) + " beyond max_height " + num(config_.max_height));
  }
}

const hl::ZetaGrid& Lab::grid(double t_max) {
  t_max = std::max(t_max, 100.0);
  check_height(t_max);
  if (grid_ && grid_->t_max() >= t_max && grid_->tol() <= config_.tol) return *grid_;
  if (!config_.allow_build) {
    auto cur = store_.current();
    if (!cur || cur->t_max() < t_max || cur->tol() > config_.tol) {
      throw CacheError("grid cache does not reach t=" + num(t_max) + " at tol " + num(config_.tol) +
                       " and building is disabled");
    }
    grid_ = std::move(cur);
    return *grid_;
  }
  // A little headroom saves repeated extend-and-save cycles.
  const double want = std::min(config_.max_height, std::max(t_max * 1.05, grid_ ? grid_->t_max() : 0.0));
  grid_ = store_.ensure(std::max(want, t_max), config_.tol);
  return *grid_;
}

ladder::LadderTable Lab::reverse_table(double T, int r) {
  check_height(T);
  // Gap law estimate of the top iterate, inflated.
  double top = T;
  for (int j = 0; j < r; ++j) top += 1.1 * kOneMinusEuler * top / std::log(top);
  if (top > config_.max_height) {
    throw InfeasibleError("reverse iterate " + std::to_string(r) + " of T=" + num(T) + " near " + num(top) +
                          " exceeds max_height " + num(config_.max_height));
  }
  double height = top;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const auto& g = grid(height);
    try {
      return ladder::reverse_iterate(g, T, r, constants());
    } catch (const GridExhaustedError& e) {
      if (e.needed() > config_.max_height) {
        throw InfeasibleError("reverse iterate of T=" + num(T) + " needs a grid to " + num(e.needed()) +
                              ", beyond max_height " + num(config_.max_height));
      }
      height = std::max(e.needed(), g.t_max() * 1.02);
    }
  }
  throw GridExhaustedError("reverse iterate: grid extension did not converge", height);
}

double Lab::reverse(double T, int r) { return reverse_table(T, r).reverse.back(); }

double Lab::phi1(double T) { return ladder::phi1(grid(T), T, constants()); }

double Lab::segment(double a, double b) { return hl::j_segment(grid(b), a, b); }

const zeta::ArgumentTrack& Lab::track(double t_max) {
  check_height(t_max);
  if (!track_ || track_->t_max() < t_max) {
    const double want = std::min(config_.max_height, t_max * 1.1);
    track_ = std::make_unique<zeta::ArgumentTrack>(zeta::ArgumentTrack::build(std::max(want, t_max)));
  }
  return *track_;
}

double Lab::second_iterate_of_T0() { return reverse(config_.T0, 2); }

// ---------------------------------------------------------------------------
// Increments

ConvergenceReport exp_linear_increment(Lab& lab, std::span<const double> T_list, int r) {
  require_ascending(T_list, "linear_increment");
  if (r < 1 || r > ladder::kMaxReverseDepth) throw DomainError("linear_increment: r must be in [1, 10]");
  ConvergenceReport rep;
  rep.experiment_id = "linear_increment";
  rep.set_param("r", std::to_string(r));
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    const double T = T_list[i];
    if (T < lab.config().T0) throw BatchDomainError("linear_increment: T below T0", i);
    const auto table = lab.reverse_table(T, r);
    const double lo = table.reverse[static_cast<std::size_t>(r - 1)];
    const double hi = table.reverse.back();
    rep.add_row(T, lab.segment(lo, hi), kOneMinusEuler * lo, std::pow(T, -2.0 / 3.0));
  }
  rep.finalize(lab.config().trend_floor);
  return rep;
}

ConvergenceReport exp_divisor_increment(Lab& lab, std::span<const double> T_list, int r) {
  require_ascending(T_list, "divisor_increment");
  if (r < 1 || r > ladder::kMaxReverseDepth) throw DomainError("divisor_increment: r must be in [1, 10]");
  ConvergenceReport rep;
  rep.experiment_id = "divisor_increment";
  rep.set_param("r", std::to_string(r));
  int positive = 0;
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    const double T = T_list[i];
    if (T < lab.config().T0) throw BatchDomainError("divisor_increment: T below T0", i);
    const auto table = lab.reverse_table(T, r);
    const double lo = table.reverse[static_cast<std::size_t>(r - 1)];
    const double hi = table.reverse.back();
    const double diff = divisor_increment(lo, hi) - lab.segment(lo, hi);
    if (diff > 0) ++positive;
    rep.add_row(T, std::abs(diff) * std::log(T) / T, kOneMinusEuler * kLnTwoPi, 1.0 / std::log(T));
  }
  rep.set_note("positive_differences", std::to_string(positive) + "/" + std::to_string(T_list.size()));
  rep.finalize(lab.config().trend_floor);
  return rep;
}

// ---------------------------------------------------------------------------
// Scaled and log functionals

ConvergenceReport exp_scaled_zeta_functional(Lab& lab, double x, std::span<const double> tau_list) {
  require_positive(x, "x", "scaled_zeta_functional");
  require_ascending(tau_list, "scaled_zeta_functional");
  guard_scaled(lab, x, tau_list, "scaled_zeta_functional");
  ConvergenceReport rep;
  rep.experiment_id = "scaled_zeta_functional";
  rep.set_param("x", x);
  for (double tau : tau_list) rep.add_row(tau, zeta_point(lab, x, tau).value, x, 1.0 / std::log(tau));
  rep.finalize(lab.config().trend_floor);
  return rep;
}

ConvergenceReport exp_scaled_divisor_functional(Lab& lab, double x, std::span<const double> tau_list) {
  require_positive(x, "x", "scaled_divisor_functional");
  require_ascending(tau_list, "scaled_divisor_functional");
  guard_scaled(lab, x, tau_list, "scaled_divisor_functional");
  ConvergenceReport rep;
  rep.experiment_id = "scaled_divisor_functional";
  rep.set_param("x", x);
  for (double tau : tau_list) rep.add_row(tau, divisor_point(lab, x, tau).value, x, 1.0 / std::log(tau));
  rep.finalize(lab.config().trend_floor);
  return rep;
}

ConvergenceReport exp_divisor_zeta_crosscheck(Lab& lab, double x, std::span<const double> tau_list) {
  require_positive(x, "x", "divisor_zeta_crosscheck");
  require_ascending(tau_list, "divisor_zeta_crosscheck");
  guard_scaled(lab, x, tau_list, "divisor_zeta_crosscheck");
  ConvergenceReport rep;
  rep.experiment_id = "divisor_zeta_crosscheck";
  rep.set_param("x", x);
  for (double tau : tau_list) {
    rep.add_row(tau, divisor_point(lab, x, tau).value, zeta_point(lab, x, tau).value, 1.0 / std::log(tau));
  }
  rep.finalize(lab.config().trend_floor);
  return rep;
}

ConvergenceReport exp_log_functional(Lab& lab, double x, std::span<const double> tau_list, bool use_divisor) {
  const char* op = use_divisor ? "log_divisor_functional" : "log_zeta_functional";
  require_positive(x, "x", op);
  require_ascending(tau_list, op);
  const double T0 = lab.config().T0;
  const double floor = std::max(std::exp(std::log(T0) / x), T0);
  for (std::size_t i = 0; i < tau_list.size(); ++i) {
    if (tau_list[i] < floor) {
      throw BatchDomainError(std::string(op) + ": tau=" + num(tau_list[i]) + " below max(T0^(1/x), T0) = " +
                                 num(floor),
                             i);
    }
  }
  ConvergenceReport rep;
  rep.experiment_id = op;
  rep.set_param("x", x);
  for (double tau : tau_list) {
    const double T = log_height(lab, x, tau);
    const double T1 = lab.reverse(T, 1);
    const double F = use_divisor ? divisor_increment(T, T1) : lab.segment(T, T1);
    rep.add_row(tau, std::log(F) / std::log(tau), x, 1.0 / std::log(tau));
  }
  rep.finalize(lab.config().trend_floor);
  return rep;
}

// ---------------------------------------------------------------------------
// Sigma identity and the S1 functional

namespace {

void check_l(int l, const char* op) {
  if (l < 1 || l > 3) throw DomainError(std::string(op) + ": l must be in {1, 2, 3}");
}

void guard_sigma(Lab& lab, std::span<const double> taus, const char* op) {
  const double edge = lab.second_iterate_of_T0();
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > edge)) {
      throw BatchDomainError(std::string(op) + ": tau=" + num(taus[i]) + " must exceed T^2(T0) = " + num(edge), i);
    }
  }
}

// Pieces of sigma int |zeta|^2 + (1-c) int |S1|^(2l) = (1-c) sigma tau at
// one checkpoint: a = int |zeta|^2 - (1-c) tau, B = (1-c) int |S1|^(2l).
struct SigmaPieces {
  double a;
  double B;
  double zeta_part;
};

SigmaPieces sigma_pieces(Lab& lab, int l, double tau) {
  const double p = lab.phi1(tau);
  const double z = lab.segment(p, tau);
  const double s1 = lab.track(tau).integrate_s1_power(p, tau, 2 * l);
  return {z - kOneMinusEuler * tau, kOneMinusEuler * s1, z};
}

}  // namespace

SigmaEstimate estimate_sigma(Lab& lab, int l, std::span<const double> tau_list) {
  check_l(l, "estimate_sigma");
  require_ascending(tau_list, "estimate_sigma");
  guard_sigma(lab, tau_list, "estimate_sigma");
  lab.track(tau_list.back());
  SigmaEstimate est;
  est.l = l;
  double num_sum = 0.0;
  double den_sum = 0.0;
  std::vector<SigmaPieces> pieces;
  for (double tau : tau_list) {
    const auto p = sigma_pieces(lab, l, tau);
    pieces.push_back(p);
    const double w = 1.0 / (tau * tau);
    num_sum += p.a * p.B * w;
    den_sum += p.a * p.a * w;
  }
  if (!(den_sum > 0.0)) throw ConvergenceError("estimate_sigma: degenerate design", den_sum);
  est.sigma_hat = -num_sum / den_sum;
  if (!(est.sigma_hat > 0.0) || !std::isfinite(est.sigma_hat)) {
    throw ConvergenceError("estimate_sigma: fitted sigma is not positive", est.sigma_hat);
  }
  for (std::size_t i = 0; i < tau_list.size(); ++i) {
    est.tau.push_back(tau_list[i]);
    est.sigma_i.push_back(-pieces[i].B / pieces[i].a);
    est.residual_spread = std::max(est.residual_spread, std::abs(est.sigma_i.back() - est.sigma_hat));
  }
  return est;
}

ConvergenceReport exp_sigma_identity(Lab& lab, int l, double sigma, std::span<const double> tau_list) {
  check_l(l, "sigma_identity");
  require_positive(sigma, "sigma", "sigma_identity");
  require_ascending(tau_list, "sigma_identity");
  guard_sigma(lab, tau_list, "sigma_identity");
  lab.track(tau_list.back());
  ConvergenceReport rep;
  rep.experiment_id = "sigma_identity";
  rep.set_param("l", std::to_string(l));
  rep.set_param("sigma", sigma);
  for (double tau : tau_list) {
    const auto p = sigma_pieces(lab, l, tau);
    const double lt = std::log(tau);
    rep.add_row(tau, (sigma * p.zeta_part + p.B) / tau, kOneMinusEuler * sigma, 1.0 / (lt * lt));
  }
  rep.finalize(lab.config().trend_floor);
  return rep;
}

ConvergenceReport exp_s1_functional(Lab& lab, double x, int l, std::span<const double> rho_list, double sigma) {
  check_l(l, "s1_functional");
  require_positive(x, "x", "s1_functional");
  require_positive(sigma, "sigma", "s1_functional");
  require_ascending(rho_list, "s1_functional");
  const double edge = kOneMinusEuler * sigma * lab.second_iterate_of_T0() / x;
  for (std::size_t i = 0; i < rho_list.size(); ++i) {
    if (!(rho_list[i] > edge)) {
      throw BatchDomainError("s1_functional: rho=" + num(rho_list[i]) + " must exceed (1-c) sigma T^2(T0) / x = " +
                                 num(edge),
                             i);
    }
  }
  const double u_max = x * rho_list.back() / (kOneMinusEuler * sigma);
  if (u_max > lab.config().max_height) {
    throw InfeasibleError("s1_functional: u = " + num(u_max) + " beyond max_height");
  }
  lab.track(u_max);
  ConvergenceReport rep;
  rep.experiment_id = "s1_functional";
  rep.set_param("x", x);
  rep.set_param("l", std::to_string(l));
  rep.set_param("sigma", sigma);
  for (double rho : rho_list) {
    const double u = x * rho / (kOneMinusEuler * sigma);
    const double p = lab.phi1(u);
    const double z = lab.segment(p, u);
    const double s1 = lab.track(u).integrate_s1_power(p, u, 2 * l);
    const double lr = std::log(rho);
    rep.add_row(rho, (sigma * z + kOneMinusEuler * s1) / rho, x, 1.0 / (lr * lr));
  }
  rep.finalize(lab.config().trend_floor);
  return rep;
}

// ---------------------------------------------------------------------------
// Fermat conditions and substitutions

std::string_view to_string(Functional f) noexcept {
  switch (f) {
    case Functional::d_linear: return "d_linear";
    case Functional::d_log: return "d_log";
    case Functional::zeta_linear: return "zeta_linear";
    case Functional::zeta_log: return "zeta_log";
    case Functional::s1: return "s1";
  }
  return "unknown";
}

ConvergenceReport fermat_condition_check(Lab& lab, const arith::FermatRational& fr,
                                         std::span<const double> tau_list, Functional functional, int l,
                                         double sigma) {
  const double q = fr.value();
  ConvergenceReport rep;
  switch (functional) {
    case Functional::d_linear: rep = exp_scaled_divisor_functional(lab, q, tau_list); break;
    case Functional::d_log: rep = exp_log_functional(lab, q, tau_list, true); break;
    case Functional::zeta_linear: rep = exp_scaled_zeta_functional(lab, q, tau_list); break;
    case Functional::zeta_log: rep = exp_log_functional(lab, q, tau_list, false); break;
    case Functional::s1: {
      if (!(sigma > 0.0)) {
        const double edge = lab.second_iterate_of_T0();
        const std::vector<double> fit{1.5 * edge, 3.0 * edge, 6.0 * edge, 12.0 * edge};
        sigma = estimate_sigma(lab, l, fit).sigma_hat;
      }
      rep = exp_s1_functional(lab, q, l, tau_list, sigma);
      break;
    }
  }
  const std::string inner = rep.experiment_id;
  rep.experiment_id = "fermat_condition";
  rep.params.insert(rep.params.begin(), {"functional", std::string(to_string(functional))});
  rep.params.insert(rep.params.begin(), {"fr", fermat_label(fr)});

  const arith::BigRational gap = fr.gap();
  const double gap_d = gap.convert_to<double>();
  rep.set_note("inner", inner);
  rep.set_note("q", rational_text(fr.q()));
  rep.set_note("q_value", q);
  rep.set_note("gap", rational_text(gap));
  rep.set_note("exact_verdict", fr.equals_one() ? std::string("q = 1")
                                                : "q=" + rational_text(fr.q()) + " != 1");
  std::string separation = "exact-only separation";
  if (!rep.rows.empty()) {
    const double v = rep.rows.back().value;
    if (std::abs(v - 1.0) > 0.5 * gap_d && std::abs(v - q) < 0.5 * gap_d) separation = "numeric separation";
  }
  rep.set_note("separation", separation);
  return rep;
}

ConvergenceReport exp_product_identity(Lab& lab, double a, const arith::FermatRational& fr,
                                       std::span<const double> tau_list) {
  require_positive(a, "a", "product_identity");
  require_ascending(tau_list, "product_identity");
  const double q = fr.value();
  guard_scaled(lab, std::min({a, q, a * q}), tau_list, "product_identity");
  ConvergenceReport rep;
  rep.experiment_id = "product_identity";
  rep.set_param("a", a);
  rep.set_param("fr", fermat_label(fr));
  double L1 = 0.0, L2 = 0.0, L3 = 0.0;
  for (double tau : tau_list) {
    L1 = zeta_point(lab, a, tau).value;
    L2 = zeta_point(lab, q, tau).value;
    L3 = zeta_point(lab, a * q, tau).value;
    rep.add_row(tau, L1 * L2, L3, 1.0 / std::log(tau));
  }
  rep.set_note("L1", L1);
  rep.set_note("L2", L2);
  rep.set_note("L3", L3);
  // L2 = 1 iff L3 = a in the limit; at finite tau both sides must sit on the
  // same side of their limit-1 values once resolvable.
  const double scale = 1.0 / std::log(tau_list.back());
  const bool r2 = std::abs(L2 - 1.0) > 2.0 * scale;
  const bool r3 = std::abs(L3 - a) > 2.0 * a * scale;
  std::string witness = "unresolved";
  if (r2 && r3) witness = ((L2 > 1.0) == (L3 > a)) ? "consistent" : "inconsistent";
  rep.set_note("equivalence_witness", witness);
  rep.finalize(lab.config().trend_floor);
  return rep;
}

ConvergenceReport exp_gamma_substitution(Lab& lab, double x0, int depth, std::span<const double> tau_list) {
  require_positive(x0, "x0", "gamma_substitution");
  if (depth < 1 || depth > 2) throw DomainError("gamma_substitution: depth must be 1 or 2");
  double x = x0;
  try {
    for (int i = 0; i < depth; ++i) x = boost::math::tgamma(x);
  } catch (const std::overflow_error&) {
    x = HUGE_VAL;
  }
  if (!std::isfinite(x) || x > 1e6) {
    throw InfeasibleError("gamma_substitution: x = Gamma-iterate of " + num(x0) + " is too large for desk scale");
  }
  auto rep = exp_scaled_divisor_functional(lab, x, tau_list);
  rep.experiment_id = "gamma_substitution";
  rep.params.insert(rep.params.begin(), {"depth", std::to_string(depth)});
  rep.params.insert(rep.params.begin(), {"x0", num(x0)});
  return rep;
}

ConvergenceReport exp_dirichlet_return(Lab& lab, double x0, std::span<const double> tau_list) {
  if (!(x0 >= 1.0)) throw DomainError("dirichlet_return: x0 must be >= 1");
  const double x = arith::divisor_summatory(x0).convert_to<double>();
  auto rep = exp_scaled_divisor_functional(lab, x, tau_list);
  rep.experiment_id = "dirichlet_return";
  rep.params.insert(rep.params.begin(), {"x0", num(x0)});
  return rep;
}

// ---------------------------------------------------------------------------
// Gap laws and the integral itself

ConvergenceReport exp_gap_laws(Lab& lab, std::span<const double> T_list) {
  require_ascending(T_list, "gap_laws");
  ConvergenceReport rep;
  rep.experiment_id = "gap_laws";
  ladder::GapDiagnostics last;
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    const double T = T_list[i];
    if (T < lab.config().T0) throw BatchDomainError("gap_laws: T below T0", i);
    const double T1 = lab.reverse(T, 1);
    const auto& primes = arith::shared_primes(static_cast<std::uint64_t>(std::ceil(T1)) + 1);
    last = ladder::gap_diagnostics(lab.grid(T1), T, 1, primes, lab.constants());
    rep.add_row(T, last.rows.front().ratio, 1.0, 1.0 / std::log(T));
  }
  rep.set_note("descent_ratio", last.descent_ratio);
  rep.set_note("complementarity", last.complementarity);
  rep.finalize(lab.config().trend_floor);
  return rep;
}

ConvergenceReport exp_hli(Lab& lab, std::span<const double> T_list, double delta) {
  require_ascending(T_list, "hli");
  ConvergenceReport rep;
  rep.experiment_id = "hli";
  rep.set_param("delta", delta);
  hl::HliComparison last;
  for (double T : T_list) {
    last = hl::hli_compare(lab.grid(T), T, delta);
    rep.add_row(T, last.j_value, last.main_term, std::pow(T, -2.0 / 3.0 + delta));
  }
  rep.set_note("remainder_over_T", std::abs(last.remainder) / last.T);
  rep.set_note("exponent_witness", last.exponent_witness);
  rep.finalize(lab.config().trend_floor);
  return rep;
}

// ---------------------------------------------------------------------------

arith::FermatRational parse_fermat(const std::string& text) {
  std::vector<long long> v;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long k = 0;
    try {
      k = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw DomainError("fermat: '" + item + "' is not an integer");
    }
    if (used != item.size()) throw DomainError("fermat: '" + item + "' is not an integer");
    v.push_back(k);
  }
  if (v.size() != 4) throw DomainError("fermat: expected x,y,z,n");
  if (v[3] > 64) throw DomainError("fermat: n above 64");
  return arith::fermat_rational(v[0], v[1], v[2], static_cast<int>(v[3]));
}

std::string fermat_label(const arith::FermatRational& fr) {
  std::ostringstream s;
  s << fr.x << ':' << fr.y << ':' << fr.z << ':' << fr.n;
  return s.str();
}

std::vector<ConvergenceReport> run_suite(Lab& lab, bool quick) {
  using V = std::vector<double>;
  std::vector<ConvergenceReport> out;
  const V heights = quick ? V{1e3, 1e4} : V{1e3, 1e4, 1e5, 1e6};
  const V taus = quick ? V{1e3, 1e4} : V{1e3, 1e4, 1e5};
  const auto fermat = parse_fermat("1,1,1,3");

  out.push_back(exp_hli(lab, heights, 0.05));
  out.push_back(exp_linear_increment(lab, heights, 1));
  out.push_back(exp_divisor_increment(lab, heights, 1));
  out.push_back(exp_gap_laws(lab, heights));
  for (double x : {0.5, 1.0, 2.0}) out.push_back(exp_scaled_divisor_functional(lab, x, taus));
  out.push_back(exp_scaled_zeta_functional(lab, 1.0, taus));
  out.push_back(exp_divisor_zeta_crosscheck(lab, 1.0, taus));
  out.push_back(exp_log_functional(lab, 1.0, taus, false));
  out.push_back(exp_log_functional(lab, 1.0, taus, true));
  out.push_back(fermat_condition_check(lab, fermat, taus, Functional::d_linear));
  out.push_back(fermat_condition_check(lab, parse_fermat("6,8,9,3"), taus, Functional::zeta_linear));
  if (!quick) {
    const V log_taus{1000.0, 1050.0, 1100.0};
    out.push_back(fermat_condition_check(lab, fermat, log_taus, Functional::d_log));
  }
  const double edge = lab.second_iterate_of_T0();
  const V fit = quick ? V{1.5 * edge, 3.0 * edge, 6.0 * edge}
                      : V{1.5 * edge, 3.0 * edge, 6.0 * edge, 12.0 * edge, 24.0 * edge, 48.0 * edge};
  const auto sigma = estimate_sigma(lab, 1, fit);
  out.push_back(exp_sigma_identity(lab, 1, sigma.sigma_hat, fit));
  out.back().set_note("residual_spread", sigma.residual_spread);
  const double rho0 = kOneMinusEuler * sigma.sigma_hat * edge;
  const V rhos = quick ? V{2.0 * rho0, 4.0 * rho0} : V{2.0 * rho0, 4.0 * rho0, 8.0 * rho0, 16.0 * rho0};
  out.push_back(exp_s1_functional(lab, 1.0, 1, rhos, sigma.sigma_hat));
  out.push_back(exp_product_identity(lab, 2.0, fermat, taus));
  out.push_back(exp_gamma_substitution(lab, 3.0, 1, taus));
  out.push_back(exp_gamma_substitution(lab, 2.5, 2, taus));
  out.push_back(exp_dirichlet_return(lab, 100.0, quick ? V{1.0, 10.0} : V{1.0, 10.0, 100.0, 1000.0}));
  return out;
}

}  // namespace ladderlab::experiments
