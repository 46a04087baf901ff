#include <benchmark/benchmark.h>

#include "pathfunc/pathfunc.hpp"

using namespace pathfunc;

static void BM_SimulatePath(benchmark::State& state) {
  const SdeModel m = gbm(0.1, 0.3, 0.8).with_sigma_band(0.01);
  const SchemeConfig cfg{static_cast<SchemeKind>(state.range(0)), 1.0 / 1024};
  std::uint64_t i = 0;
  std::int64_t steps = 0;
  for (auto _ : state) {
    const StepPath p = simulate_path(m, cfg, RngStream{1, i++});
    steps += static_cast<std::int64_t>(p.size() - 1);
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(steps);
  state.SetLabel(std::string(to_string(cfg.kind)));
}
BENCHMARK(BM_SimulatePath)->DenseRange(0, 3);

static void BM_Evaluate(benchmark::State& state) {
  const StepPath p = simulate_path(gbm(0.1, 0.3, 0.8), SchemeConfig{SchemeKind::Euler, 1.0 / 1024}, RngStream{2, 0});
  const auto spec = FunctionalSpec::uniform(static_cast<std::size_t>(state.range(0)),
                                            payoff_discrete_barrier_call(0.5, 1.0, 0.1, state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(p, spec));
}
BENCHMARK(BM_Evaluate)->Arg(1)->Arg(12)->Arg(252);

static void BM_RunningMax(benchmark::State& state) {
  const StepPath p = simulate_path(gbm(0.1, 0.3, 0.8),
                                   SchemeConfig{SchemeKind::Euler, 1.0 / static_cast<double>(state.range(0))},
                                   RngStream{3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(running_max(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RunningMax)->RangeMultiplier(8)->Range(64, 32768)->Complexity(benchmark::oN);

static void BM_Skorohod(benchmark::State& state) {
  const auto n = static_cast<double>(state.range(0));
  const SchemeConfig cfg{SchemeKind::BinomialFixed, 1.0 / n};
  const SdeModel m = gbm(0.0, 0.3, 1.0);
  const StepPath x = simulate_path(m, cfg, RngStream{4, 0});
  const StepPath y = simulate_path(m, cfg, RngStream{4, 1});
  for (auto _ : state) benchmark::DoNotOptimize(skorohod_distance_approx(x, y));
}
BENCHMARK(BM_Skorohod)->Arg(16)->Arg(128)->Arg(1024);

static void BM_Estimate(benchmark::State& state) {
  const SdeModel m = gbm(0.1, 0.3, 0.8);
  const auto spec = FunctionalSpec::uniform(12, payoff_discrete_barrier_call(0.5, 1.0, 0.1, 12));
  EstimateOptions o;
  o.ui_override = true;
  o.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate(m, SchemeConfig{SchemeKind::Euler, 1.0 / 240}, spec, 2048, 1, o));
}
BENCHMARK(BM_Estimate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
