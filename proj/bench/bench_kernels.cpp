// Serial reference vs OpenMP kernels. Worker count follows
// PROPHET_LAB_THREADS / OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "prophet_lab/engine.hpp"
#include "prophet_lab/optimize.hpp"

using namespace prophet_lab;

namespace {

PolicyFactory wai_factory() {
  const PolicySpec spec{StrategyKind::Wai, ObservationFraction::parse("0.463"), nullptr};
  return [spec](std::int64_t n) { return make_policy(spec, n); };
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto inst = instances::dirac(state.range(0));
  const auto f = wai_factory();
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_serial(f, "wai", inst, 20000, 42, LambdaWeight(0.5)));
  }
  state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto inst = instances::dirac(state.range(0));
  const auto f = wai_factory();
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo(f, "wai", inst, 20000, 42, LambdaWeight(0.5)));
  }
  state.SetItemsProcessed(state.iterations() * 20000);
  state.counters["workers"] = worker_count();
}

const std::vector<SweepCurve> kBoth{SweepCurve::RpiLower, SweepCurve::WaiUpper};

void BM_SweepSerial(benchmark::State& state) {
  const auto grid = parse_grid("0:1:0.01");
  const auto table = AlphaTable::default_table();
  for (auto _ : state) benchmark::DoNotOptimize(lambda_sweep_serial(kBoth, grid, 1e-6, table));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto grid = parse_grid("0:1:0.01");
  const auto table = AlphaTable::default_table();
  for (auto _ : state) benchmark::DoNotOptimize(lambda_sweep(kBoth, grid, 1e-6, table));
  state.counters["workers"] = worker_count();
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Arg(100)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(100)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
