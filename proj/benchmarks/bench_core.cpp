#include <benchmark/benchmark.h>

#include "brownloop/evolve.hpp"
#include "brownloop/loopmc.hpp"

using namespace brownloop;

namespace {

const HyperbolicModel& model(int n) { return n == 2 ? HyperbolicModel::h2() : HyperbolicModel::h3(); }

void BM_HeatKernel(benchmark::State& state) {
  const HyperbolicModel& m = model(static_cast<int>(state.range(0)));
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(heat_kernel(m, 10.0, r));
    r = r < 20.0 ? r + 0.37 : 0.0;
  }
}
BENCHMARK(BM_HeatKernel)->Arg(2)->Arg(3);

void BM_Phi0(benchmark::State& state) {
  const HyperbolicModel& m = model(static_cast<int>(state.range(0)));
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi0(m, r));
    r = r < 200.0 ? r + 0.71 : 0.0;
  }
}
BENCHMARK(BM_Phi0)->Arg(2)->Arg(3);

void BM_KernelProfileBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(KernelProfile::shifted_heat(HyperbolicModel::h2(), 100.0, 70.0));
}
BENCHMARK(BM_KernelProfileBuild)->Unit(benchmark::kMillisecond);

void BM_EvolvePoint(benchmark::State& state) {
  const HyperbolicModel& m = model(static_cast<int>(state.range(0)));
  const RelativizedSpace s(m);
  const InitialData f = radial_bump(m);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(s, f, 100.0, {{5.0, 0.0, 0.0}}));
}
BENCHMARK(BM_EvolvePoint)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LoopSimulation(benchmark::State& state) {
  MCConfig c;
  c.n_paths = 1000;
  c.dt = 1e-2;
  c.t_end = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_loop(HyperbolicModel::h2(), c));
  state.SetItemsProcessed(state.iterations() * c.n_paths * c.steps());
}
BENCHMARK(BM_LoopSimulation)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
