#include <benchmark/benchmark.h>

#include "teamlab/equilibrium.hpp"
#include "teamlab/harness.hpp"

using namespace teamlab;

static void BM_BestResponse(benchmark::State& state) {
  const TeamConfig cfg;
  const MechanismStrengths mech;
  double others = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(cfg, mech, 0.45, others));
    others = others < 5.0 ? others + 0.01 : 0.5;
  }
}
BENCHMARK(BM_BestResponse);

static void BM_SolveSymmetric(benchmark::State& state) {
  TeamConfig cfg;
  cfg.team_size = static_cast<int>(state.range(0));
  const auto loyal = LoyaltyProfile::uniform(cfg.team_size, 0.45);
  for (auto _ : state) benchmark::DoNotOptimize(solve_tpe(cfg, MechanismStrengths{}, loyal));
}
BENCHMARK(BM_SolveSymmetric)->Arg(3)->Arg(8)->Arg(50);

static void BM_SolveHeterogeneous(benchmark::State& state) {
  TeamConfig cfg;
  cfg.team_size = static_cast<int>(state.range(0));
  LoyaltyProfile loyal;
  for (int i = 0; i < cfg.team_size; ++i) loyal.values.push_back(0.9 * i / (cfg.team_size - 1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_tpe(cfg, MechanismStrengths{}, loyal));
}
BENCHMARK(BM_SolveHeterogeneous)->Arg(3)->Arg(8);

static void BM_Sweep(benchmark::State& state) {
  SweepOptions options;
  options.workers = static_cast<unsigned>(state.range(0));
  options.bootstrap_resamples = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(GridSpec{}, options).rows.size());
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
