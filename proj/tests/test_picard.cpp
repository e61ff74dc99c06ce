#include <cmath>
#include <memory>

#include "doctest.h"

#include "chemoflux/picard.hpp"

using namespace chemoflux;

namespace {

// march the plain scheme with a fixed dt and collect the slices
PicardIterate direct_march(const Parameters& p, const ModelFunctions& funcs,
                           const InitialData& init, const MeshPtr& mesh, double horizon,
                           int time_steps, AdvectionScheme scheme) {
  PicardIterate out;
  out.horizon = horizon;
  out.time_steps = time_steps;
  State s;
  s.t = 0.0;
  init.build(mesh, s.u, s.v, s.a, s.b);
  out.u.push_back(s.u);
  out.v.push_back(s.v);
  out.a.push_back(s.a);
  out.b.push_back(s.b);
  SolverConfig cfg;
  cfg.scheme = scheme;
  const double dt = horizon / time_steps;
  for (int m = 0; m < time_steps; ++m) {
    s = step(s, p, funcs, cfg, dt);
    out.u.push_back(s.u);
    out.v.push_back(s.v);
    out.a.push_back(s.a);
    out.b.push_back(s.b);
  }
  return out;
}

}  // namespace

TEST_SUITE("picard") {

TEST_CASE("seed iterate extends the initial data constant in time") {
  const MeshPtr m = build_mesh(12);
  InitialData init;
  init.u = init_gaussian(0.5, 0.1, 1.0, 0.0);
  init.b = init_constant(0.3);
  const PicardIterate it = seed_iterate(init, m, 0.05, 8);
  CHECK(it.index == 0);
  CHECK(it.time_steps == 8);
  CHECK(it.u.size() == 9);
  for (int s = 0; s <= 8; ++s) {
    for (int i = 0; i < 12; ++i) {
      CHECK(it.u[s][i] == it.u[0][i]);
      CHECK(it.b[s][i] == 0.3);
    }
  }
  CHECK_THROWS_AS(seed_iterate(init, m, 0.0, 8), Error);
  CHECK_THROWS_AS(seed_iterate(init, m, 0.05, 0), Error);
}

TEST_CASE("the direct fixed-dt solution is a fixed point of the sweep") {
  // with a time-independent influx the sweep applied to the marched solution
  // reproduces it through identical arithmetic
  Parameters p;
  ModelFunctions funcs;
  funcs.g = preset_constant(0.4);
  funcs.h = preset_saturating(1.0);
  funcs.f = preset_logistic_f(0.5, p.k_capacity);
  funcs.rho = preset_saturating_rho(1.0);
  InitialData init;
  init.u = init_constant(0.1);
  init.v = init_gaussian(0.3, 0.1, 0.5, 0.1);
  init.b = init_constant(0.2);

  const MeshPtr mesh = build_mesh(32);
  const PicardIterate direct = direct_march(p, funcs, init, mesh, 0.02, 20,
                                            AdvectionScheme::Upwind);
  auto frozen = std::make_shared<const PicardIterate>(direct);
  const PicardIterate swept = picard_step(frozen, p, funcs, AdvectionScheme::Upwind);
  CHECK(composite_norm_diff(swept, direct) <= 1e-15);
}

TEST_CASE("iterates converge to the direct solution on a short horizon") {
  const Figure1Preset fig = figure1_preset();
  const MeshPtr mesh = build_mesh(64);
  const double T = 0.025;
  const int M = 25;

  auto current = std::make_shared<const PicardIterate>(
      seed_iterate(fig.initial, mesh, T, M));
  for (int k = 0; k < 10; ++k) {
    current = std::make_shared<const PicardIterate>(
        picard_step(current, fig.params, fig.funcs));
  }
  const PicardIterate direct =
      direct_march(fig.params, fig.funcs, fig.initial, mesh, T, M, AdvectionScheme::Upwind);
  CHECK(composite_norm_diff(*current, direct) <= 1e-10);
  CHECK(current->index == 10);
  CHECK(current->previous->index == 9);
}

TEST_CASE("contraction study on the reference setup") {
  const Figure1Preset fig = figure1_preset();
  const MeshPtr mesh = build_mesh(64);
  const auto reports = run_contraction_study(fig.params, fig.funcs, fig.initial, mesh,
                                             {0.025}, 6, 25);
  REQUIRE(reports.size() == 1);
  const ContractionReport& rep = reports[0];
  CHECK(rep.deltas.size() == 6);
  CHECK(rep.ratios.size() == 5);
  CHECK(rep.contractive);
  // every ratio after the warm-up one is a strong contraction; the exact
  // values alternate (cell and chemical errors trade places in the max
  // norm), so only the magnitude is pinned
  for (size_t k = 1; k < rep.ratios.size(); ++k) CHECK(rep.ratios[k] < 0.05);
  // the difference norms themselves fall monotonically
  for (size_t k = 1; k < rep.deltas.size(); ++k) {
    CHECK(rep.deltas[k] < rep.deltas[k - 1]);
  }
}

TEST_CASE("contraction study validates and sizes its outputs") {
  const Figure1Preset fig = figure1_preset();
  const MeshPtr mesh = build_mesh(16);
  CHECK_THROWS_AS(run_contraction_study(fig.params, fig.funcs, fig.initial, mesh, {0.01}, 1, 5),
                  Error);
  const auto reports = run_contraction_study(fig.params, fig.funcs, fig.initial, mesh,
                                             {0.01, 0.02}, 3, 5);
  CHECK(reports.size() == 2);
  CHECK(reports[0].horizon == 0.01);
  CHECK(reports[1].horizon == 0.02);
  for (const auto& r : reports) {
    CHECK(r.deltas.size() == 3);
    CHECK(r.ratios.size() == 2);
  }
}

TEST_CASE("composite norm requires matching grids and sees every slice") {
  const MeshPtr m = build_mesh(8);
  InitialData init;
  init.u = init_constant(1.0);
  PicardIterate x = seed_iterate(init, m, 0.1, 4);
  PicardIterate y = x;
  CHECK(composite_norm_diff(x, y) == 0.0);

  y.u[3][2] += 0.5;  // one slice, one cell
  const double d = composite_norm_diff(x, y);
  CHECK(d == doctest::Approx(std::sqrt(0.125 * 0.25)).epsilon(1e-13));  // l2 of lone bump

  PicardIterate z = seed_iterate(init, m, 0.1, 5);
  CHECK_THROWS_AS(composite_norm_diff(x, z), Error);
}

}  // TEST_SUITE
