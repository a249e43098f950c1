#include <benchmark/benchmark.h>

#include "sacs/propagator.hpp"
#include "sacs/protocols.hpp"
#include "sacs/quantum.hpp"
#include "sacs/sweeps.hpp"

using namespace sacs;

static void BM_Eigensystem(benchmark::State& state) {
  const auto h = build_hamiltonian({52.1, 52.1, 20.0, -20.0, 30.5, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(eigensystem(h));
}
BENCHMARK(BM_Eigensystem);

static void BM_Step(benchmark::State& state) {
  const auto h = build_hamiltonian({52.1, 52.1, 20.0, -20.0, 30.5, 0.3});
  StateVector psi = StateVector::basis(0);
  for (auto _ : state) {
    psi = step(psi, h, 0.001);
    benchmark::DoNotOptimize(psi);
  }
}
BENCHMARK(BM_Step);

static void BM_SacsPropagation(benchmark::State& state) {
  const auto s = make_sacs(SacsParams{});
  const auto grid = default_grid(s);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(s, grid, {false, false}));
}
BENCHMARK(BM_SacsPropagation)->Unit(benchmark::kMillisecond);

static void BM_ContourCell(benchmark::State& state) {
  ContourParams p;
  p.stark_peak = 50.0;
  const auto s = contour_scenario(p, 40.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(final_state_populations(s));
}
BENCHMARK(BM_ContourCell)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
