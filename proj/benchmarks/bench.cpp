#include <benchmark/benchmark.h>

#include "toda/closure.hpp"
#include "toda/radial.hpp"

using namespace toda;

static void BM_Enumerate(benchmark::State& state) {
  const Conic c(state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(c).size());
}
BENCHMARK(BM_Enumerate)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FloatOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(float_oracle_enumerate(2, 2).size());
}
BENCHMARK(BM_FloatOracle)->Unit(benchmark::kMicrosecond);

static void BM_CompareRadicals(benchmark::State& state) {
  const RealScalar a = sqrt(RealScalar(2)) * sqrt(RealScalar(3));
  const RealScalar b = sqrt(RealScalar(6));
  const RealScalar c = RealScalar(5) - sqrt(RealScalar(13));
  for (auto _ : state) {
    benchmark::DoNotOptimize(numeric::compare(a, b));
    benchmark::DoNotOptimize(numeric::compare(c, RealScalar(1)));
  }
}
BENCHMARK(BM_CompareRadicals);

static void BM_TowerIntegration(benchmark::State& state) {
  RadialProblem p;
  p.gamma = GammaVector::zeros(2);
  p.h = {1.0, 1.0};
  p.eta = {0.0, -30.0};
  p.t1 = 40.0;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(p).points());
}
BENCHMARK(BM_TowerIntegration)->Unit(benchmark::kMillisecond);

static void BM_PlateauDetection(benchmark::State& state) {
  RadialProblem p;
  p.gamma = GammaVector::zeros(2);
  p.h = {1.0, 1.0};
  p.eta = {0.0, -30.0};
  p.t1 = 40.0;
  const Trajectory tr = integrate(p);
  for (auto _ : state) benchmark::DoNotOptimize(detect_plateaus(tr).size());
}
BENCHMARK(BM_PlateauDetection)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
