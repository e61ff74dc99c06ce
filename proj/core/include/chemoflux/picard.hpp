#pragma once

#include <memory>
#include <vector>

#include "chemoflux/solver.hpp"

namespace chemoflux {

/// One iterate of the successive-approximation scheme behind the local
/// existence argument: a full space-time solution on [0, horizon] stored as
/// time_steps + 1 field slices per unknown.
struct PicardIterate {
  int index = 0;
  double horizon = 0.0;
  int time_steps = 0;
  std::vector<Field> u, v, a, b;  // slice m lives at t = m * horizon / time_steps
  std::shared_ptr<const PicardIterate> previous;  // the frozen iterate this was built from
};

/// Iterate 0: the initial data extended constant in time.
PicardIterate seed_iterate(const InitialData& init, const MeshPtr& mesh, double horizon,
                           int time_steps);

/// One sweep of the scheme.  The chemicals (a, b) are solved first as linear
/// parabolic problems with sources beta1*v, beta2*u frozen from the previous
/// iterate; the cells (u, v) are then advected by the NEW chemical gradients.
/// In the v kinetics, rho is evaluated on the new b while f keeps the frozen
/// v — the exact staggering of the underlying argument.  Boundary terms (g
/// influx for u, h(b(0)) influx for v) use the same conventions as step().
PicardIterate picard_step(std::shared_ptr<const PicardIterate> prev, const Parameters& params,
                          const ModelFunctions& funcs,
                          AdvectionScheme scheme = AdvectionScheme::Upwind);

/// max over time slices of max{ |a1-a2|_H1, |b1-b2|_H1, |u1-u2|_L2, |v1-v2|_L2 }.
double composite_norm_diff(const PicardIterate& x, const PicardIterate& y);

struct ContractionReport {
  double horizon = 0.0;
  int time_steps = 0;
  std::vector<double> deltas;  // composite norms of successive differences, delta[k] = |it_{k+1} - it_k|
  std::vector<double> ratios;  // ratios[k] = deltas[k+1] / deltas[k]
  double ratio_threshold = 1.0;
  bool contractive = false;    // all ratios after the first stay below the threshold
};

/// Run `iterations` sweeps for each horizon and report the contraction
/// behavior.  A vanishing predecessor difference makes the following ratios
/// 0 (the iteration has converged).
std::vector<ContractionReport> run_contraction_study(
    const Parameters& params, const ModelFunctions& funcs, const InitialData& init,
    const MeshPtr& mesh, const std::vector<double>& horizons, int iterations, int time_steps,
    AdvectionScheme scheme = AdvectionScheme::Upwind);

}  // namespace chemoflux
