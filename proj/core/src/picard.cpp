#include "chemoflux/picard.hpp"

#include <algorithm>
#include <cmath>

namespace chemoflux {

PicardIterate seed_iterate(const InitialData& init, const MeshPtr& mesh, double horizon,
                           int time_steps) {
  if (!(horizon > 0.0) || time_steps < 1) {
    throw Error("seed_iterate: horizon must be > 0 and time_steps >= 1");
  }
  PicardIterate it;
  it.index = 0;
  it.horizon = horizon;
  it.time_steps = time_steps;
  Field u0, v0, a0, b0;
  init.build(mesh, u0, v0, a0, b0);
  it.u.assign(time_steps + 1, u0);
  it.v.assign(time_steps + 1, v0);
  it.a.assign(time_steps + 1, a0);
  it.b.assign(time_steps + 1, b0);
  return it;
}

PicardIterate picard_step(std::shared_ptr<const PicardIterate> prev, const Parameters& p,
                          const ModelFunctions& funcs, AdvectionScheme scheme) {
  const PicardIterate& old = *prev;
  const MeshPtr& mesh = old.u.front().mesh;
  const int n = mesh->n_cells();
  const double dx = mesh->dx();
  const int M = old.time_steps;
  const double dt = old.horizon / M;

  PicardIterate next;
  next.index = old.index + 1;
  next.horizon = old.horizon;
  next.time_steps = M;
  next.previous = prev;
  next.u.reserve(M + 1);
  next.v.reserve(M + 1);
  next.a.reserve(M + 1);
  next.b.reserve(M + 1);

  // Chemicals first: linear parabolic marches with frozen sources.
  next.a.push_back(old.a.front());
  next.b.push_back(old.b.front());
  std::vector<double> src(n);
  for (int m = 0; m < M; ++m) {
    for (int i = 0; i < n; ++i) src[i] = p.beta1 * old.v[m][i];
    next.a.push_back(implicit_update(next.a[m], p.d3, p.mu_a, dt, nullptr, src));
    for (int i = 0; i < n; ++i) src[i] = p.beta2 * old.u[m][i];
    next.b.push_back(implicit_update(next.b[m], p.d4, p.mu_b, dt, nullptr, src));
  }

  // Cells second, advected by the new chemical gradients.
  next.u.push_back(old.u.front());
  next.v.push_back(old.v.front());
  for (int m = 0; m < M; ++m) {
    const double t_new = (m + 1) * dt;

    const FaceField flux_u = chemotactic_face_flux(next.u[m], next.a[m], p.alpha1, scheme);
    std::fill(src.begin(), src.end(), 0.0);
    src[n - 1] = p.d1 * funcs.g(t_new) / dx;
    next.u.push_back(implicit_update(next.u[m], p.d1, p.mu, dt, &flux_u, src));

    const FaceField flux_v = chemotactic_face_flux(next.v[m], next.b[m], p.alpha2, scheme);
    // rho sees the new chemicals, f keeps the frozen previous v.
    for (int i = 0; i < n; ++i) src[i] = funcs.rho(next.b[m][i]) * funcs.f(old.v[m][i]);
    src[0] += p.d2 * funcs.h(next.b[m][0]) / dx;
    next.v.push_back(implicit_update(next.v[m], p.d2, 0.0, dt, &flux_v, src));
  }
  return next;
}

namespace {

Field field_diff(const Field& x, const Field& y) {
  require_same_mesh(x, y);
  Field d(x.mesh);
  for (int i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

}  // namespace

double composite_norm_diff(const PicardIterate& x, const PicardIterate& y) {
  if (x.time_steps != y.time_steps || x.horizon != y.horizon) {
    throw Error("composite_norm_diff: iterates use different time grids");
  }
  double worst = 0.0;
  for (int m = 0; m <= x.time_steps; ++m) {
    worst = std::max(worst, h1_seminorm(field_diff(x.a[m], y.a[m])));
    worst = std::max(worst, h1_seminorm(field_diff(x.b[m], y.b[m])));
    worst = std::max(worst, l2_norm(field_diff(x.u[m], y.u[m])));
    worst = std::max(worst, l2_norm(field_diff(x.v[m], y.v[m])));
  }
  return worst;
}

std::vector<ContractionReport> run_contraction_study(const Parameters& p,
                                                     const ModelFunctions& funcs,
                                                     const InitialData& init, const MeshPtr& mesh,
                                                     const std::vector<double>& horizons,
                                                     int iterations, int time_steps,
                                                     AdvectionScheme scheme) {
  if (iterations < 2) throw Error("run_contraction_study: need at least 2 iterations");
  std::vector<ContractionReport> reports;
  reports.reserve(horizons.size());
  for (double T : horizons) {
    ContractionReport rep;
    rep.horizon = T;
    rep.time_steps = time_steps;

    auto current = std::make_shared<const PicardIterate>(seed_iterate(init, mesh, T, time_steps));
    for (int k = 0; k < iterations; ++k) {
      auto next = std::make_shared<const PicardIterate>(picard_step(current, p, funcs, scheme));
      rep.deltas.push_back(composite_norm_diff(*next, *current));
      current = next;
    }
    for (size_t k = 1; k < rep.deltas.size(); ++k) {
      const double prev = rep.deltas[k - 1];
      rep.ratios.push_back(prev > 1e-14 ? rep.deltas[k] / prev : 0.0);
    }
    rep.contractive = true;
    for (size_t k = 1; k < rep.ratios.size(); ++k) {
      if (!(rep.ratios[k] < rep.ratio_threshold)) rep.contractive = false;
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace chemoflux
