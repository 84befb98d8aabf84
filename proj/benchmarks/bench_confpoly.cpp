#include <benchmark/benchmark.h>

#include "confpoly/crofton.hpp"
#include "confpoly/geometry.hpp"
#include "confpoly/measures.hpp"
#include "confpoly/moduli.hpp"

namespace {

void BM_ClosedFormCurvature(benchmark::State& state) {
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(confpoly::quad_curvature_closed(t, 0.3));
    t += 1e-7;  // defeat value caching without leaving (0,1)
    if (t > 0.9) t = 0.1;
  }
}
BENCHMARK(BM_ClosedFormCurvature);

void BM_VertexCurvature(benchmark::State& state) {
  confpoly::QuadCoords q{1.2, 1.0};
  for (auto _ : state) {
    confpoly::Polygon p = confpoly::quad_from_coords(q);
    benchmark::DoNotOptimize(confpoly::total_curvature(p));
  }
}
BENCHMARK(BM_VertexCurvature);

void BM_Reconstruct(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  confpoly::UnconfinedSampler sampler(n, 42);
  confpoly::ActionAngle aa = sampler.next();
  for (auto _ : state) {
    benchmark::DoNotOptimize(confpoly::reconstruct(aa));
  }
}
BENCHMARK(BM_Reconstruct)->Arg(4)->Arg(8)->Arg(16);

void BM_UnconfinedDraw(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  confpoly::UnconfinedSampler sampler(n, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.next());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_UnconfinedDraw)->Arg(4)->Arg(6)->Arg(10);

void BM_ConfinedDraw(benchmark::State& state) {
  confpoly::ConfinedSampler sampler({4, 1.5}, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.next());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ConfinedDraw);

void BM_KappaBarQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        confpoly::kappa_bar(1.3, confpoly::EstimateMethod::kQuadrature));
  }
}
BENCHMARK(BM_KappaBarQuadrature);

void BM_BoundaryGrid(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(confpoly::mu_B_grid(1.2, 513));
  }
}
BENCHMARK(BM_BoundaryGrid);

}  // namespace

BENCHMARK_MAIN();
