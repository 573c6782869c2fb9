// Acceptance runner: one PASS/FAIL line per criterion.
//
//   ladderlab_acceptance [--only N] --cache FILE --scratch DIR

#include "zeta_oracle.hpp"

#include "ladderlab/arithmetic.hpp"
#include "ladderlab/argument_track.hpp"
#include "ladderlab/constants.hpp"
#include "ladderlab/experiments.hpp"
#include "ladderlab/grid_store.hpp"
#include "ladderlab/hl_integral.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/ortho_systems.hpp"
#include "ladderlab/zeta_critical.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace ladderlab;
using experiments::Lab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

struct Context {
  fs::path cache;
  fs::path scratch;
  std::unique_ptr<Lab> lab_;

  Lab& lab() {
    if (!lab_) {
      experiments::LabConfig cfg;
      cfg.cache_path = cache;
      cfg.max_height = 1.3e6;
      lab_ = std::make_unique<Lab>(cfg);
    }
    return *lab_;
  }
};

bool nonincreasing_abs_deviation(const experiments::ConvergenceReport& r) {
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    if (std::abs(r.rows[i].deviation) > std::abs(r.rows[i - 1].deviation)) return false;
  }
  return true;
}

// The report's own trend rule: |deviation| nonincreasing over the last three
// decade checkpoints or all of them under the floor, and no worse at the end
// than at the start.
bool decade_trend_ok(const experiments::ConvergenceReport& r) {
  return r.verdict == experiments::Verdict::trend_ok &&
         std::abs(r.rows.back().deviation) <= std::abs(r.rows.front().deviation);
}

std::string trend_text(const experiments::ConvergenceReport& r) {
  return std::string(" verdict=") + std::string(experiments::to_string(r.verdict)) +
         " strictly_nonincreasing=" + (nonincreasing_abs_deviation(r) ? "yes" : "no");
}

std::string deviations(const experiments::ConvergenceReport& r) {
  std::string s;
  for (const auto& row : r.rows) s += (s.empty() ? "" : " ") + fmt(row.tau) + ":" + fmt(row.deviation);
  return s;
}

Outcome divisor_oracle(Context&) {
  Stopwatch sw;
  const auto table = arith::sieve_divisors(100'000'000);
  std::uint64_t mismatches = 0;
  for (std::uint64_t N = 1; N <= 100'000; ++N) {
    if (arith::divisor_summatory_n(N) != arith::BigInt(table.prefix(N))) ++mismatches;
  }
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<std::uint64_t> u(1, 100'000'000);
  for (int i = 0; i < 1000; ++i) {
    const auto N = u(rng);
    if (arith::divisor_summatory_n(N) != arith::BigInt(table.prefix(N))) ++mismatches;
  }
  const double secs = sw.seconds();
  return {mismatches == 0 && secs < 30.0,
          "mismatches=" + std::to_string(mismatches) + " runtime=" + fmt(secs) + "s (limit 30)"};
}

Outcome dirichlet_bound(Context&) {
  Stopwatch sw;
  const auto table = arith::sieve_divisors(1'000'000);
  const double k = 2.0 * kEulerGamma - 1.0;
  auto smooth = [k](double x) { return x * std::log(x) + k * x; };
  double worst = 0.0;
  bool pos = false, neg = false;
  // On [N, N+1) D is constant and the smooth part increases, so |Delta| peaks
  // at one of the two ends; dividing by sqrt(N) bounds the whole interval.
  for (std::uint64_t N = 10; N <= 1'000'000; ++N) {
    const double x = static_cast<double>(N);
    const double D = static_cast<double>(table.prefix(N));
    const double left = D - smooth(x);
    const double right = N < 1'000'000 ? D - smooth(x + 1.0) : left;
    worst = std::max(worst, std::max(std::abs(left), std::abs(right)) / std::sqrt(x));
    pos = pos || left > 0 || right > 0;
    neg = neg || left < 0 || right < 0;
  }
  const double secs = sw.seconds();
  return {worst <= 3.0 && pos && neg && secs < 60.0,
          "max|Delta|/sqrt(x)=" + fmt(worst) + " positive=" + (pos ? "yes" : "no") +
              " negative=" + (neg ? "yes" : "no") + " runtime=" + fmt(secs) + "s"};
}

Outcome zeta_accuracy(Context& ctx) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(50.0, 1e4);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double t = u(rng);
    const double ref = static_cast<double>(oracle::z_function(t));
    const double got = zeta::z_value(t);
    worst = std::max(worst, std::abs(got - ref) / std::max(std::abs(ref), 1.0));
  }
  const auto& track = ctx.lab().track(30.0);
  const auto& zs = track.zeros();
  const bool have = zs.size() >= 2;
  const double e1 = have ? std::abs(zs[0] - 14.134725) : 1.0;
  const double e2 = have ? std::abs(zs[1] - 21.022040) : 1.0;
  return {worst <= 1e-6 && e1 <= 1e-4 && e2 <= 1e-4,
          "max relative error=" + fmt(worst) + " zero1 err=" + fmt(e1) + " zero2 err=" + fmt(e2)};
}

Outcome hli(Context& ctx) {
  const auto& g = ctx.lab().grid(1e5);
  const auto a = hl::hli_compare(g, 1e3, 0.05);
  const auto b = hl::hli_compare(g, 1e5, 0.05);
  const double ra = std::abs(a.remainder) / 1e3;
  const double rb = std::abs(b.remainder) / 1e5;
  return {rb < ra && ra <= 0.05, "|R|/T at 1e3=" + fmt(ra) + " at 1e5=" + fmt(rb)};
}

Outcome round_trip(Context& ctx) {
  double worst = 0.0;
  for (double T : {1e3, 1e4, 1e5}) {
    const double up = ctx.lab().reverse(T, 1);
    worst = std::max(worst, std::abs(ctx.lab().phi1(up) - T) / T);
  }
  return {worst <= 1e-8, "max |phi1(phi1^-1(T))-T|/T=" + fmt(worst)};
}

Outcome gap_laws(Context& ctx) {
  const auto& primes = arith::shared_primes(200'000);
  const auto& g = ctx.lab().grid(1.2e5);
  const auto lo = ladder::gap_diagnostics(g, 1e3, 1, primes);
  const auto hi = ladder::gap_diagnostics(g, 1e5, 1, primes);
  const double r3 = lo.rows[0].ratio, r5 = hi.rows[0].ratio;
  const bool ok = r5 > 0.8 && r5 < 1.2 && std::abs(r5 - 1.0) < std::abs(r3 - 1.0) &&
                  hi.complementarity > 0.98 && hi.complementarity < 1.02;
  return {ok, "gap ratio 1e3=" + fmt(r3) + " 1e5=" + fmt(r5) + " complementarity 1e5=" +
                  fmt(hi.complementarity)};
}

Outcome linear_increments(Context& ctx) {
  const std::vector<double> Ts{1e3, 1e4, 1e5, 1e6};
  const auto r = experiments::exp_linear_increment(ctx.lab(), Ts, 1);
  double ratio = 0.0;
  for (const auto& row : r.rows) {
    if (row.tau == 1e5) ratio = row.value / (kOneMinusEuler * row.tau);
  }
  return {ratio > 0.85 && ratio < 1.15 && decade_trend_ok(r),
          "ratio at 1e5=" + fmt(ratio) + " deviations " + deviations(r) + trend_text(r)};
}

Outcome lemma1(Context& ctx) {
  const std::vector<double> Ts{1e3, 1e4, 1e5, 1e6};
  const auto r = experiments::exp_divisor_increment(ctx.lab(), Ts, 1);
  double constant = 0.0;
  std::string values;
  for (const auto& row : r.rows) {
    constant = std::max(constant, row.value);
    values += " " + fmt(row.value);
  }
  return {constant < 20.0 && r.rows.size() == 4, "constant=" + fmt(constant) + " values" + values};
}

Outcome lemma3(Context& ctx) {
  bool ok = true;
  std::string detail;
  for (double x : {0.5, 1.0, 2.0}) {
    std::vector<double> taus;
    for (double tau : {1e3, 1e4, 1e5, 1e6}) {
      if (x * tau / kOneMinusEuler * 1.05 < ctx.lab().config().max_height) taus.push_back(tau);
    }
    const auto r = experiments::exp_scaled_divisor_functional(ctx.lab(), x, taus);
    // deviation = value / x - 1, as in every report
    const double last = std::abs(r.rows.back().deviation);
    const bool good = taus.back() >= 1e5 && last <= 0.2 && decade_trend_ok(r);
    ok = ok && good;
    detail += " x=" + fmt(x) + "[" + deviations(r) + ";" + trend_text(r) + "]";
  }
  return {ok, detail.substr(1)};
}

Outcome fermat(Context& ctx) {
  const std::vector<double> taus{1e3, 1e4, 1e5};
  bool ok = true;
  std::string detail;
  for (const char* text : {"1,1,1,3", "2,2,2,3"}) {
    const auto fr = experiments::parse_fermat(text);
    const auto r = experiments::fermat_condition_check(ctx.lab(), fr, taus,
                                                       experiments::Functional::d_linear);
    const bool converging = std::abs(r.rows.back().deviation) < std::abs(r.rows.front().deviation);
    const bool exact = !fr.equals_one() && fr.q() == arith::BigRational(2);
    ok = ok && converging && exact;
    detail += std::string(text) + " " + *r.note("exact_verdict") + " [" + deviations(r) + "]; ";
  }
  const auto close = experiments::fermat_condition_check(ctx.lab(), experiments::parse_fermat("6,8,9,3"),
                                                         taus, experiments::Functional::d_linear);
  const bool gap_ok = *close.note("gap") == "1/729";
  const bool sep_ok = *close.note("separation") == "exact-only separation";
  ok = ok && gap_ok && sep_ok;
  detail += "6,8,9,3 gap=" + *close.note("gap") + " " + *close.note("separation") + "; ";

  Stopwatch sw;
  const auto scan = arith::fermat_scan(50, 3, 7);
  const double secs = sw.seconds();
  ok = ok && scan.hits.empty() && secs < 60.0;
  detail += "scan checked=" + std::to_string(scan.checked) + " hits=" + std::to_string(scan.hits.size()) +
            " runtime=" + fmt(secs) + "s";
  return {ok, detail};
}

Outcome product(Context& ctx) {
  const std::vector<double> taus{1e3, 1e4, 1e5};
  const auto r = experiments::exp_product_identity(ctx.lab(), 2.0, experiments::parse_fermat("1,1,1,3"), taus);
  const double first = std::abs(r.rows.front().value - r.rows.front().target);
  const double last = std::abs(r.rows.back().value - r.rows.back().target);
  return {last < first, "|L1L2-L3| at 1e3=" + fmt(first) + " at 1e5=" + fmt(last)};
}

Outcome sigma(Context& ctx) {
  auto& lab = ctx.lab();
  // The two highest feasible tau decades, four geometric checkpoints each.
  std::vector<double> w1, w2;
  for (int k = 0; k <= 3; ++k) {
    w1.push_back(1e4 * std::pow(10.0, k / 3.0));
    w2.push_back(1e5 * std::pow(10.0, k / 3.0));
  }
  const auto a = experiments::estimate_sigma(lab, 1, w1);
  const auto b = experiments::estimate_sigma(lab, 1, w2);
  const double drift = std::abs(a.sigma_hat - b.sigma_hat) / b.sigma_hat;

  // u = x rho / ((1-c) sigma) spans up to 1e6.
  const double s = b.sigma_hat;
  std::vector<double> rhos;
  for (double u : {3e3, 3e4, 3e5, 1e6}) rhos.push_back(u * kOneMinusEuler * s);
  const auto r = experiments::exp_s1_functional(lab, 1.0, 1, rhos, s);
  const double last = std::abs(r.rows.back().deviation);
  return {drift <= 0.1 && last <= 0.2,
          "sigma window1=" + fmt(a.sigma_hat) + " window2=" + fmt(b.sigma_hat) + " drift=" + fmt(drift) +
              " lemma6 deviations " + deviations(r)};
}

Outcome gram(Context& ctx) {
  const auto& g = ctx.lab().grid(2e4);
  const auto plain = ortho::gram_matrix(g, 1e3, {0, 0, 0}, 8);
  double worst = 0.0;
  for (int n = 0; n <= 8; ++n) {
    for (int m = 0; m <= 8; ++m) {
      worst = std::max(worst, std::abs(plain.entry(n, m) - (n == m ? 2.0 / (2 * n + 1) : 0.0)));
    }
  }
  const auto ladder = ortho::gram_matrix(g, 1e3, {1, 1, 1}, 6);
  const double off = ladder.max_normalized_offdiagonal(6);
  return {worst <= 1e-10 && off <= 1e-3,
          "legendre max error=" + fmt(worst) + " (1,1,1) max normalized off-diagonal=" + fmt(off)};
}

Outcome euler(Context&) {
  const auto r = arith::euler_pi_representation(2.0);
  const double err = std::abs(r.value - M_PI * M_PI / 6.0);
  return {err <= 1e-6, "|zeta(2) - pi^2/6|=" + fmt(err) + " primes=" + std::to_string(r.primes_used)};
}

Outcome performance(Context& ctx) {
  std::vector<double> ts(1'000'000);
  for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = 1e3 + (1e5 - 1e3) * static_cast<double>(i) / (ts.size() - 1);
  Stopwatch s1;
  const auto one = zeta::modulus_sq_batch(ts, 1);
  const double t1 = s1.seconds();
  Stopwatch s8;
  const auto eight = zeta::modulus_sq_batch(ts, 8);
  const double t8 = s8.seconds();
  const double speedup = t1 / t8;

  fs::create_directories(ctx.scratch);
  const auto path = ctx.scratch / "perf_grid.llz";
  fs::remove(path);
  fs::remove(path.string() + ".json");
  double build = 0.0, reload = 0.0;
  int reload_builds = -1;
  {
    hl::GridStore store(path);
    Stopwatch sb;
    store.ensure(1e6, 1e-6);
    build = sb.seconds();
  }
  {
    Stopwatch sr;
    hl::GridStore store(path);
    store.ensure(1e6, 1e-6);
    reload = sr.seconds();
    reload_builds = store.builds();
  }
  const bool ok = t1 <= 120.0 && speedup >= 3.0 && build <= 1800.0 && reload < 5.0 && reload_builds == 0 &&
                  one.size() == eight.size();
  return {ok, "batch 1 thread=" + fmt(t1) + "s, 8 threads=" + fmt(t8) + "s, speedup=" + fmt(speedup) +
                  " (cores available: " + std::to_string(omp_get_num_procs()) + "), grid build=" + fmt(build) +
                  "s, reload=" + fmt(reload) + "s"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ladderlab acceptance criteria"};
  int only = 0;
  Context ctx;
  std::string cache = "acceptance_grid.llz", scratch = "acceptance_scratch";
  app.add_option("--only", only, "run a single criterion (1-15)")->check(CLI::Range(1, 15));
  app.add_option("--cache", cache, "shared grid cache file");
  app.add_option("--scratch", scratch, "directory for timed builds");
  CLI11_PARSE(app, argc, argv);
  ctx.cache = cache;
  ctx.scratch = scratch;

  const std::vector<std::function<Outcome(Context&)>> criteria{
      divisor_oracle, dirichlet_bound, zeta_accuracy, hli,    round_trip,
      gap_laws,       linear_increments, lemma1,      lemma3, fermat,
      product,        sigma,           gram,          euler,  performance};

  int failures = 0;
  for (int n = 1; n <= 15; ++n) {
    if (only != 0 && n != only) continue;
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(n - 1)](ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
