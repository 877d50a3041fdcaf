#include <benchmark/benchmark.h>

#include "sks/diagnostics.hpp"
#include "sks/field.hpp"
#include "sks/inequalities.hpp"
#include "sks/scl.hpp"
#include "sks/stepper.hpp"

using namespace sks;

namespace {

const ModelParams unit(1.0, 1.0);

void BM_GradSDirect(benchmark::State& st) {
  const auto g = equilibrium_grid(unit, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(grad_S_direct(g, unit));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_GradSDirect)->RangeMultiplier(2)->Range(200, 3200)->Complexity();

void BM_GradSRecursion(benchmark::State& st) {
  const auto g = equilibrium_grid(unit, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(grad_S_all(g, unit));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_GradSRecursion)->RangeMultiplier(2)->Range(200, 3200)->Complexity();

void BM_Step(benchmark::State& st) {
  const auto g = init_grid_from_density(two_peaks_density(unit), static_cast<std::size_t>(st.range(0)), unit);
  StepConfig sc;
  for (auto _ : st) benchmark::DoNotOptimize(step(g, unit, sc));
}
BENCHMARK(BM_Step)->Arg(400)->Arg(800);

void BM_EnergyRecord(benchmark::State& st) {
  const auto g = equilibrium_grid(unit, 400);
  for (auto _ : st) benchmark::DoNotOptimize(make_record(0.0, g, unit));
}
BENCHMARK(BM_EnergyRecord);

void BM_PoincareSuite(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(poincare_suite({1.0, 1.5, 3.0, 10.0}, 1.0, 20));
}
BENCHMARK(BM_PoincareSuite)->Unit(benchmark::kMillisecond);

void BM_SclStep(benchmark::State& st) {
  const ResponseSpec s{ResponseSpec::Kind::smooth_tanh, 10.0, 2.0};
  const auto z = stationary_profile(s, s.chi(), 20.0, 0.02);
  const FluxTable f(s, 1.5);
  for (auto _ : st) benchmark::DoNotOptimize(step_scl(z, f, 0.01));
}
BENCHMARK(BM_SclStep);

}  // namespace

BENCHMARK_MAIN();
