#include <benchmark/benchmark.h>

#include "flatknot/cycles.hpp"
#include "flatknot/fixtures.hpp"
#include "flatknot/flow.hpp"
#include "flatknot/lattice.hpp"
#include "flatknot/pendulum.hpp"
#include "flatknot/resistance.hpp"
#include "flatknot/uniformization.hpp"

using namespace flatknot;

static void BM_GridCountBacktracking(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_cycle_count_backtracking(n));
}
BENCHMARK(BM_GridCountBacktracking)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_GridCountTransfer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_cycle_count_transfer(n));
}
BENCHMARK(BM_GridCountTransfer)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

static void BM_TrefoilCycles(benchmark::State& state) {
  const KnotDiagram d = detect_crossings(fixtures::trefoil(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cycles(d));
}
BENCHMARK(BM_TrefoilCycles)->Arg(256)->Arg(1024);

static void BM_Mre(benchmark::State& state) {
  const KnotDiagram d = detect_crossings(fixtures::random_fourier(512, 4, 3));
  for (auto _ : state) benchmark::DoNotOptimize(mre(d, 0.5));
}
BENCHMARK(BM_Mre);

static void BM_UniformizationGradient(benchmark::State& state) {
  const GaussRep g = gauss_from_curve(fixtures::ellipse(2.0, 1.0, static_cast<std::size_t>(state.range(0))));
  const EnergyFunctional e = EnergyFunctional::power(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(uf_gradient(g, e));
}
BENCHMARK(BM_UniformizationGradient)->RangeMultiplier(4)->Range(256, 4096);

static void BM_FlowStep(benchmark::State& state) {
  FlowConfig cfg;
  cfg.samples = static_cast<std::size_t>(state.range(0));
  cfg.resistance = state.range(1) ? ResistanceFamily::kMRE : ResistanceFamily::kNone;
  const ClosedCurve c = fixtures::noisy(fixtures::trefoil(cfg.samples), 0.05, 1);
  for (auto _ : state) benchmark::DoNotOptimize(flow_step(c, cfg, cfg.step0));
}
BENCHMARK(BM_FlowStep)->Args({256, 0})->Args({256, 1})->Args({1024, 0})->Unit(benchmark::kMillisecond);

static void BM_PendulumXi(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_critical_xi(2));
}
BENCHMARK(BM_PendulumXi);
BENCHMARK_MAIN();
