#include <benchmark/benchmark.h>

#include "catk/rates.hpp"

namespace {

using namespace catk;

void BM_PhiHarmonic(benchmark::State& state) {
  const ModuliSchedule s = harmonic_schedule();
  EvalContext ctx;
  for (auto _ : state)
    benchmark::DoNotOptimize(phi(0.2, 1.0, 0.1, s.gamma, s.theta, s.alpha, ctx));
}
BENCHMARK(BM_PhiHarmonic);

void BM_TowerHarmonicEstimate(benchmark::State& state) {
  const ModuliSchedule s = harmonic_schedule();
  const GFunction g = GFunction::affine(1, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(table1_tower(0.5, g, 1.0, 0.1, s));
}
BENCHMARK(BM_TowerHarmonicEstimate);

void BM_TowerSqrtExact(benchmark::State& state) {
  const ModuliSchedule s = sqrt_schedule();
  const GFunction g = GFunction::constant(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(table1_tower(1.9, g, 1.0, 0.001, s));
}
BENCHMARK(BM_TowerSqrtExact);

void BM_BrowderK(benchmark::State& state) {
  const GFunction g = GFunction::affine(1, 1);
  EvalContext ctx;
  for (auto _ : state)
    benchmark::DoNotOptimize(browder_K(0.1, g, 0.1, 1.0, ctx));
}
BENCHMARK(BM_BrowderK);

} // namespace

BENCHMARK_MAIN();
