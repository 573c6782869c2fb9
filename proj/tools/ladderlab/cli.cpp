// cli.cpp

#include "cli.hpp"

#include "run_config.hpp"

#include "ladderlab/errors.hpp"
#include "ladderlab/experiments.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/zeta_critical.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace ladderlab::cli {
namespace {

namespace ex = ladderlab::experiments;
using Json = nlohmann::ordered_json;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw DomainError("list: '" + item + "' is not a number");
    out.push_back(x);
  }
  if (out.empty()) throw DomainError("list: empty");
  return out;
}

ex::Functional parse_functional(const std::string& s) {
  static const std::map<std::string, ex::Functional> names{
      {"d_linear", ex::Functional::d_linear},       {"d_log", ex::Functional::d_log},
      {"zeta_linear", ex::Functional::zeta_linear}, {"zeta_log", ex::Functional::zeta_log},
      {"s1", ex::Functional::s1}};
  const auto it = names.find(s);
  if (it == names.end()) throw DomainError("functional: unknown '" + s + "'");
  return it->second;
}

ex::LabConfig lab_config(const RunConfig& c) {
  ex::LabConfig l;
  l.cache_path = c.cache_path;
  l.tol = c.tol;
  l.T0 = c.T0;
  l.c0 = c.c0;
  l.threads = c.thread_budget;
  l.max_height = c.max_height;
  l.allow_build = c.allow_build;
  return l;
}

// Output sink: the -o file when given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot write " + path);
      out_ = file_.get();
    }
  }
  std::ostream& get() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

struct ZetaArgs {
  std::optional<double> t;
  std::vector<double> range;
  double step = 0.1;
};

int cmd_zeta(const RunConfig& cfg, const ZetaArgs& a, std::ostream& out) {
  std::vector<double> ts;
  if (a.t) {
    ts.push_back(*a.t);
  } else if (a.range.size() == 2) {
    if (!(a.step > 0.0) || !(a.range[1] >= a.range[0])) throw DomainError("zeta: need --range A B with A <= B and --step > 0");
    const auto n = static_cast<std::size_t>(std::llround((a.range[1] - a.range[0]) / a.step));
    if (n > 50'000'000) throw DomainError("zeta: range too long");
    for (std::size_t i = 0; i <= n; ++i) ts.push_back(a.range[0] + static_cast<double>(i) * a.step);
  } else {
    throw DomainError("zeta: give --t or --range");
  }
  const auto samples = zeta::modulus_sq_batch(ts, cfg.thread_budget);
  if (cfg.output_format == OutputFormat::json) {
    Json arr = Json::array();
    for (const auto& s : samples) {
      arr.push_back({{"t", s.t},
                     {"z_value", s.z_value},
                     {"modulus_sq", s.modulus_sq},
                     {"method", std::string(zeta::to_string(s.method))},
                     {"est_abs_error", s.est_abs_error}});
    }
    out << arr.dump(2) << '\n';
  } else {
    out << "t,z_value,modulus_sq,method,est_abs_error\n";
    for (const auto& s : samples) {
      out << ex::format_number(s.t) << ',' << ex::format_number(s.z_value) << ','
          << ex::format_number(s.modulus_sq) << ',' << zeta::to_string(s.method) << ','
          << ex::format_number(s.est_abs_error) << '\n';
    }
  }
  return kExitOk;
}

struct LadderArgs {
  double T = 0.0;
  std::optional<int> reverse;
  std::optional<int> forward;
};

int cmd_ladder(const RunConfig& cfg, const LadderArgs& a, std::ostream& out) {
  if (a.reverse.has_value() == a.forward.has_value()) throw DomainError("ladder: give exactly one of --reverse, --forward");
  ex::Lab lab(lab_config(cfg));
  std::vector<std::pair<int, double>> rows;
  std::string direction;
  if (a.reverse) {
    direction = "reverse";
    const auto table = lab.reverse_table(a.T, *a.reverse);
    for (std::size_t j = 0; j < table.reverse.size(); ++j) rows.emplace_back(static_cast<int>(j), table.reverse[j]);
  } else {
    direction = "forward";
    const auto table = ladder::forward_iterate(lab.grid(a.T), a.T, *a.forward, lab.constants());
    for (std::size_t j = 1; j < table.forward.size(); ++j) rows.emplace_back(static_cast<int>(j), table.forward[j]);
  }
  if (cfg.output_format == OutputFormat::json) {
    Json arr = Json::array();
    for (const auto& [j, t] : rows) arr.push_back({{"direction", direction}, {"j", j}, {"t", t}});
    out << arr.dump(2) << '\n';
  } else {
    out << "direction,j,t\n";
    for (const auto& [j, t] : rows) out << direction << ',' << j << ',' << ex::format_number(t) << '\n';
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string id;
  std::string tau;
  double x = 1.0;
  std::string fr = "1,1,1,3";
  int r = 1;
  int l = 1;
  double sigma = 0.0;
  double a = 2.0;
  double x0 = 3.0;
  int depth = 1;
  double delta = 0.05;
  std::string functional = "d_linear";
  bool quick = false;
};

std::vector<double> list_or(const std::string& text, std::vector<double> fallback) {
  return text.empty() ? fallback : parse_list(text);
}

std::vector<ex::ConvergenceReport> dispatch(ex::Lab& lab, const ExperimentArgs& a) {
  using V = std::vector<double>;
  const V decades{1e3, 1e4, 1e5};
  const std::string& id = a.id;
  if (id == "all") return ex::run_suite(lab, a.quick);
  if (id == "hli") return {ex::exp_hli(lab, list_or(a.tau, decades), a.delta)};
  if (id == "increment") return {ex::exp_linear_increment(lab, list_or(a.tau, decades), a.r)};
  if (id == "lemma1") return {ex::exp_divisor_increment(lab, list_or(a.tau, decades), a.r)};
  if (id == "lemma2") return {ex::exp_divisor_zeta_crosscheck(lab, a.x, list_or(a.tau, decades))};
  if (id == "lemma3") return {ex::exp_scaled_divisor_functional(lab, a.x, list_or(a.tau, decades))};
  if (id == "zeta_functional") return {ex::exp_scaled_zeta_functional(lab, a.x, list_or(a.tau, decades))};
  if (id == "log_zeta") return {ex::exp_log_functional(lab, a.x, list_or(a.tau, {1e3, 1e4}), false)};
  if (id == "log_divisor") return {ex::exp_log_functional(lab, a.x, list_or(a.tau, {1e3, 1e4}), true)};
  if (id == "gap_laws") return {ex::exp_gap_laws(lab, list_or(a.tau, decades))};
  if (id == "product") return {ex::exp_product_identity(lab, a.a, ex::parse_fermat(a.fr), list_or(a.tau, decades))};
  if (id == "gamma") return {ex::exp_gamma_substitution(lab, a.x0, a.depth, list_or(a.tau, decades))};
  if (id == "dirichlet") return {ex::exp_dirichlet_return(lab, a.x0, list_or(a.tau, {1.0, 10.0, 100.0}))};

  const double edge = lab.second_iterate_of_T0();
  const V fit{1.5 * edge, 3.0 * edge, 6.0 * edge, 12.0 * edge};
  auto sigma_for = [&] { return a.sigma > 0.0 ? a.sigma : ex::estimate_sigma(lab, a.l, fit).sigma_hat; };
  if (id == "sigma") {
    const V taus = list_or(a.tau, fit);
    const auto est = ex::estimate_sigma(lab, a.l, taus);
    auto rep = ex::exp_sigma_identity(lab, a.l, est.sigma_hat, taus);
    rep.set_note("sigma_hat", est.sigma_hat);
    rep.set_note("residual_spread", est.residual_spread);
    return {rep};
  }
  if (id == "lemma6") {
    const double sigma = sigma_for();
    const double rho0 = kOneMinusEuler * sigma * edge / a.x;
    return {ex::exp_s1_functional(lab, a.x, a.l, list_or(a.tau, {2 * rho0, 4 * rho0, 8 * rho0}), sigma)};
  }

  ex::Functional functional;
  V fallback = decades;
  if (id == "theorem1") {
    functional = ex::Functional::d_linear;
  } else if (id == "theorem2") {
    functional = ex::Functional::d_log;
    fallback = {1000.0, 1050.0, 1100.0};
  } else if (id == "theorem3" || id == "lemma7") {
    functional = ex::Functional::s1;
  } else if (id == "fermat") {
    functional = parse_functional(a.functional);
  } else {
    throw DomainError("experiment: unknown id '" + id + "'");
  }
  const auto fr = ex::parse_fermat(a.fr);
  if (functional == ex::Functional::s1) {
    const double sigma = sigma_for();
    const double rho0 = kOneMinusEuler * sigma * edge / fr.value();
    fallback = {2 * rho0, 4 * rho0, 8 * rho0};
    return {ex::fermat_condition_check(lab, fr, list_or(a.tau, fallback), functional, a.l, sigma)};
  }
  return {ex::fermat_condition_check(lab, fr, list_or(a.tau, fallback), functional, a.l, a.sigma)};
}

int cmd_experiment(const RunConfig& cfg, const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  ex::Lab lab(lab_config(cfg));
  const auto reports = dispatch(lab, a);
  if (cfg.output_format == OutputFormat::json) {
    ex::write_json(reports, out);
  } else {
    ex::write_csv_header(out);
    for (const auto& r : reports) ex::write_csv_rows(r, out);
  }
  bool violated = false;
  for (const auto& r : reports) {
    err << "# " << r.experiment_id << " [" << r.param_string() << "] verdict=" << ex::to_string(r.verdict) << '\n';
    for (const auto& n : r.notes) err << "#   " << n.name << " = " << n.value << '\n';
    violated = violated || r.verdict == ex::Verdict::trend_violated;
  }
  return (a.id == "all" && violated) ? kExitTrend : kExitOk;
}

Json grid_info(const hl::ZetaGrid& g, const std::filesystem::path& path) {
  return {{"path", path.string()},
          {"version", g.version()},
          {"t_min", g.t_min()},
          {"t_max", g.t_max()},
          {"tol", g.tol()},
          {"nodes", g.nodes().size()},
          {"step_policy", g.step_policy()},
          {"build_seconds", g.stats().seconds},
          {"threads", g.stats().threads},
          {"achieved_tol", g.stats().achieved_tol}};
}

int cmd_grid_build(const RunConfig& cfg, double t_max, std::ostream& out) {
  if (!cfg.allow_build) throw CacheError("grid build: building disabled by --no-build");
  hl::BuildOptions opts;
  opts.threads = cfg.thread_budget;
  hl::GridStore store(cfg.cache_path, opts);
  const auto g = store.ensure(t_max, cfg.tol);
  out << grid_info(g, cfg.cache_path).dump(2) << '\n';
  return kExitOk;
}

int cmd_grid_info(const RunConfig& cfg, std::ostream& out) {
  if (!std::filesystem::exists(cfg.cache_path)) throw CacheError("grid info: no cache at " + cfg.cache_path.string());
  const auto g = hl::load_grid(cfg.cache_path);
  out << grid_info(g, cfg.cache_path).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ladderlab: zeta on the critical line, ladder iterates, experiments"};
  app.require_subcommand(1);

  std::optional<std::string> config_file;
  ConfigOverrides ov;
  std::string output;
  app.add_option("--config", config_file, "key=value config file");
  app.add_option("--cache", ov.cache_path, "grid cache file (overrides LADDERLAB_CACHE)");
  app.add_option("--tol", ov.tol, "grid tolerance");
  app.add_option("--T0", ov.T0, "threshold T0 of the domain guards");
  app.add_option("--c0", ov.c0, "constant c0 of the ladder representation");
  app.add_option("--threads", ov.thread_budget, "thread budget (0: default)");
  app.add_option("--format", ov.format, "csv or json");
  app.add_option("--max-height", ov.max_height, "largest height an experiment may reach");
  app.add_flag("--no-build", ov.no_build, "never build or extend the grid");
  app.add_option("-o,--output", output, "write results to this file");

  ZetaArgs zeta_args;
  auto* zeta_cmd = app.add_subcommand("zeta", "Z(t) and |zeta(1/2+it)|^2");
  auto* t_opt = zeta_cmd->add_option("--t", zeta_args.t, "single height");
  auto* range_opt = zeta_cmd->add_option("--range", zeta_args.range, "A B")->expected(2);
  zeta_cmd->add_option("--step", zeta_args.step, "range step");
  t_opt->excludes(range_opt);

  LadderArgs ladder_args;
  auto* ladder_cmd = app.add_subcommand("ladder", "reverse or forward ladder iterates");
  ladder_cmd->add_option("--T", ladder_args.T, "base height")->required();
  ladder_cmd->add_option("--reverse", ladder_args.reverse, "rows T^0..T^r");
  ladder_cmd->add_option("--forward", ladder_args.forward, "rows phi1^1(T)..phi1^k(T)");

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiment", "run one experiment, or all");
  exp_cmd->add_option("id", exp_args.id,
                      "all, hli, increment, lemma1, lemma2, lemma3, zeta_functional, log_zeta, log_divisor, "
                      "sigma, lemma6, lemma7, theorem1, theorem2, theorem3, fermat, product, gamma, dirichlet, "
                      "gap_laws")
      ->required();
  exp_cmd->add_option("--tau", exp_args.tau, "comma list of checkpoints (tau, rho or T)");
  exp_cmd->add_option("--x", exp_args.x, "scale x");
  exp_cmd->add_option("--fr", exp_args.fr, "Fermat rational x,y,z,n");
  exp_cmd->add_option("--r", exp_args.r, "ladder depth r");
  exp_cmd->add_option("--l", exp_args.l, "S1 moment l");
  exp_cmd->add_option("--sigma", exp_args.sigma, "sigma(l); fitted when omitted");
  exp_cmd->add_option("--a", exp_args.a, "product identity factor a");
  exp_cmd->add_option("--x0", exp_args.x0, "argument for gamma / dirichlet");
  exp_cmd->add_option("--depth", exp_args.depth, "Gamma depth (1 or 2)");
  exp_cmd->add_option("--delta", exp_args.delta, "exponent slack for hli");
  exp_cmd->add_option("--functional", exp_args.functional, "d_linear, d_log, zeta_linear, zeta_log, s1");
  exp_cmd->add_flag("--quick", exp_args.quick, "reduced checkpoint lists (all)");

  double grid_t_max = 1e6;
  auto* grid_cmd = app.add_subcommand("grid", "manage the J grid cache");
  grid_cmd->require_subcommand(1);
  auto* build_cmd = grid_cmd->add_subcommand("build", "build or extend the cache");
  build_cmd->add_option("--t-max", grid_t_max, "height to reach");
  auto* info_cmd = grid_cmd->add_subcommand("info", "print cache metadata");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    const RunConfig cfg =
        resolve_config(config_file ? std::optional<std::filesystem::path>(*config_file) : std::nullopt, ov);
    Sink sink(output, out);
    if (zeta_cmd->parsed()) return cmd_zeta(cfg, zeta_args, sink.get());
    if (ladder_cmd->parsed()) return cmd_ladder(cfg, ladder_args, sink.get());
    if (exp_cmd->parsed()) return cmd_experiment(cfg, exp_args, sink.get(), err);
    if (build_cmd->parsed()) return cmd_grid_build(cfg, grid_t_max, sink.get());
    if (info_cmd->parsed()) return cmd_grid_info(cfg, sink.get());
    return kExitDomain;
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << '\n';
    return kExitCache;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitDomain;
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace ladderlab::cli
