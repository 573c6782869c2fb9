#include "ladderlab/arithmetic.hpp"
#include "ladderlab/hl_integral.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/zeta_critical.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace ladderlab;

static void BM_z_pointwise(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  double acc = 0.0;
  for (auto _ : state) {
    acc += zeta::modulus_sq(t);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_z_pointwise)->Arg(100)->Arg(10'000)->Arg(1'000'000);

static void BM_z_batch(benchmark::State& state) {
  std::vector<double> ts(10'000);
  for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = 1e3 + 9.9 * static_cast<double>(i);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zeta::modulus_sq_batch(ts, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ts.size()));
}
BENCHMARK(BM_z_batch)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_divisor_sieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(arith::sieve_divisors(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_divisor_sieve)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_hyperbola(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(arith::divisor_summatory_n(N));
}
BENCHMARK(BM_hyperbola)->Arg(100'000'000)->Arg(1'000'000'000'000);

static void BM_grid_build(benchmark::State& state) {
  const double t_max = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hl::build_grid(t_max, 1e-6));
}
BENCHMARK(BM_grid_build)->Arg(2'000)->Arg(20'000)->Unit(benchmark::kMillisecond);

static void BM_phi1(benchmark::State& state) {
  static const auto grid = hl::build_grid(2e4, 1e-6);
  double T = 1e3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ladder::phi1(grid, T));
    T = T < 1.9e4 ? T + 17.0 : 1e3;
  }
}
BENCHMARK(BM_phi1);

BENCHMARK_MAIN();
