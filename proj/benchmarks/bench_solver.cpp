#include <benchmark/benchmark.h>

#include "qgraph/bond_scattering.hpp"
#include "qgraph/counting.hpp"
#include "qgraph/fd_oracle.hpp"
#include "qgraph/level_stats.hpp"
#include "qgraph/presets.hpp"
#include "qgraph/solver.hpp"

using namespace qgraph;

static void BM_SecularResidual(benchmark::State& state) {
  const auto bs = BondScattering(preset("goe_a").graph());
  double k = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(secular_residual(bs, k));
    k += 1e-3;
  }
}
BENCHMARK(BM_SecularResidual);

static void BM_CountRoots(benchmark::State& state) {
  const auto g = preset("goe_a").graph();
  for (auto _ : state) benchmark::DoNotOptimize(count_roots(g, 1.0, 50.0));
}
BENCHMARK(BM_CountRoots);

static void BM_SolvePreset(benchmark::State& state, const char* name) {
  const auto p = preset(name);
  for (auto _ : state) benchmark::DoNotOptimize(solve_spectrum(p.graph(), p.sweep.solver));
}
BENCHMARK_CAPTURE(BM_SolvePreset, goe_a, "goe_a")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolvePreset, gue, "gue")->Unit(benchmark::kMillisecond);

static void BM_SolveGueNumericsWindow(benchmark::State& state) {
  const auto g = preset("gue").graph();
  SolverConfig c;
  c.window = gue_numerics_window();
  for (auto _ : state) benchmark::DoNotOptimize(solve_spectrum(g, c));
}
BENCHMARK(BM_SolveGueNumericsWindow)->Unit(benchmark::kMillisecond);

static void BM_Interlacing(benchmark::State& state) {
  const auto p = preset("goe_a");
  const auto a = solve_spectrum(p.graph(), p.sweep.solver);
  const auto b = solve_spectrum(edge_switch(p.graph(), p.sweep.switch_descriptor), p.sweep.solver);
  for (auto _ : state) {
    benchmark::DoNotOptimize(interlacing_report(a, b));
    benchmark::DoNotOptimize(shift_distribution(a, b));
  }
}
BENCHMARK(BM_Interlacing);

static void BM_FitXi(benchmark::State& state) {
  SpacingSample sample;
  for (int i = 0; i < 2000; ++i) sample.spacings.push_back(0.05 + 2.5 * ((i * 7919) % 2000) / 2000.0);
  for (auto _ : state) benchmark::DoNotOptimize(fit_xi(sample));
}
BENCHMARK(BM_FitXi);

static void BM_FdOracle(benchmark::State& state) {
  const auto g = preset("goe_a").graph();
  for (auto _ : state) benchmark::DoNotOptimize(fd_oracle_spectrum(g, static_cast<int>(state.range(0)), 10));
}
BENCHMARK(BM_FdOracle)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
