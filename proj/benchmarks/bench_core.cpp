#include <benchmark/benchmark.h>

#include <vector>

#include "chemoflux/analysis.hpp"
#include "chemoflux/model.hpp"
#include "chemoflux/picard.hpp"
#include "chemoflux/solver.hpp"

namespace {

using namespace chemoflux;

void bm_tridiagonal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> lo(n, -1.0), di(n, 2.5), up(n, -1.0), rhs(n, 1.0);
  for (auto _ : state) {
    auto x = solve_tridiagonal(lo, di, up, rhs);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_tridiagonal)->Arg(200)->Arg(2000);

void bm_step(benchmark::State& state) {
  const Figure1Preset fig = figure1_preset();
  const MeshPtr mesh = build_mesh(static_cast<int>(state.range(0)));
  State s;
  s.t = 0.0;
  fig.initial.build(mesh, s.u, s.v, s.a, s.b);
  SolverConfig cfg;
  for (auto _ : state) {
    step(s, fig.params, fig.funcs, cfg, 1e-4);
  }
  state.SetItemsProcessed(state.iterations() * mesh->n_cells());
}
BENCHMARK(bm_step)->Arg(200)->Arg(1000);

void bm_greens_solve(benchmark::State& state) {
  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(i / 19.0);
  for (auto _ : state) {
    auto sol = greens_solve([](double s) { return 1.0 + s * s; }, 1.7, 1.0, xs);
    benchmark::DoNotOptimize(sol.data());
  }
}
BENCHMARK(bm_greens_solve);

void bm_picard_step(benchmark::State& state) {
  const Figure1Preset fig = figure1_preset();
  const MeshPtr mesh = build_mesh(100);
  InitialData init = fig.initial;
  auto prev = std::make_shared<PicardIterate>(seed_iterate(init, mesh, 0.025, 25));
  for (auto _ : state) {
    PicardIterate next = picard_step(prev, fig.params, fig.funcs);
    benchmark::DoNotOptimize(next.u.data());
  }
}
BENCHMARK(bm_picard_step);

}  // namespace

BENCHMARK_MAIN();
