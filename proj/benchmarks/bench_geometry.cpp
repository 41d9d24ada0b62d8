#include <benchmark/benchmark.h>

#include "catk/domain.hpp"
#include "catk/halpern.hpp"
#include "catk/rng.hpp"

namespace {

using namespace catk;

ConvexBall bench_ball() {
  Eigen::VectorXd pole(3);
  pole << 0.0, 0.0, 1.0;
  return ConvexBall(ModelPoint(pole), 0.05, Curvature(1.0, 2));
}

void BM_Distance(benchmark::State& state) {
  const ConvexBall ball = bench_ball();
  Rng rng(7);
  const ModelPoint p = sample_in_ball(ball, rng);
  const ModelPoint q = sample_in_ball(ball, rng);
  for (auto _ : state) benchmark::DoNotOptimize(distance(p, q, ball.curv));
}
BENCHMARK(BM_Distance);

void BM_GeodesicPoint(benchmark::State& state) {
  const ConvexBall ball = bench_ball();
  Rng rng(7);
  const ModelPoint p = sample_in_ball(ball, rng);
  const ModelPoint q = sample_in_ball(ball, rng);
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_point(p, q, 0.37, ball.curv));
}
BENCHMARK(BM_GeodesicPoint);

void BM_ComparisonTriangle(benchmark::State& state) {
  const Curvature c(1.0, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(comparison_triangle(0.06, 0.05, 0.07, c));
}
BENCHMARK(BM_ComparisonTriangle);

void BM_HalpernStep(benchmark::State& state) {
  const ConvexBall ball = bench_ball();
  Rng rng(7);
  const ModelPoint anchor = sample_in_ball(ball, rng);
  const NonexpansiveMap T = NonexpansiveMap::geodesic_pull(ball, anchor, 0.5);
  const ModuliSchedule s = harmonic_schedule();
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(iterate(ball.center, T, s, n));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HalpernStep)->Arg(1000);

} // namespace
