#include "omm/config.hpp"
#include "omm/engine.hpp"
#include "omm/measures.hpp"
#include "omm/model.hpp"
#include "omm/presets.hpp"
#include "omm/stability.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace omm;

void BM_LyapunovAlgebraic(benchmark::State& state) {
  const EffectiveParams e = effective_from_config(preset_base_config());
  const DriftMatrix a = build_drift(e);
  const DiffusionMatrix d = build_diffusion(e);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov_algebraic(a, d));
}
BENCHMARK(BM_LyapunovAlgebraic);

void BM_EigenStability(benchmark::State& state) {
  const DriftMatrix a = build_drift(effective_from_config(preset_base_config()));
  for (auto _ : state) benchmark::DoNotOptimize(is_stable(a));
}
BENCHMARK(BM_EigenStability);

void BM_RouthHurwitz(benchmark::State& state) {
  const DriftMatrix a = build_drift(effective_from_config(preset_base_config()));
  for (auto _ : state) benchmark::DoNotOptimize(routh_hurwitz(a));
}
BENCHMARK(BM_RouthHurwitz);

void BM_EvaluatePoint(benchmark::State& state) {
  const Config c = preset_base_config();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_point(c));
}
BENCHMARK(BM_EvaluatePoint);

void BM_MeasuresDefaultPairs(benchmark::State& state) {
  const PointResult r = evaluate_point(preset_base_config());
  const auto pairs = default_pairs();
  for (auto _ : state) {
    benchmark::DoNotOptimize(all_pairs_report(*r.covariance, pairs, Physicality::skip));
  }
}
BENCHMARK(BM_MeasuresDefaultPairs);

void BM_Sweep(benchmark::State& state) {
  SweepSpec s = figure_preset("fig2a");
  s.x.points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(s, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sweep)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
