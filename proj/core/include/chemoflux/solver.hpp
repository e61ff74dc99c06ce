#pragma once

#include <functional>
#include <vector>

#include "chemoflux/diagnostics.hpp"
#include "chemoflux/model.hpp"

namespace chemoflux {

enum class AdvectionScheme { Upwind, Central };

struct SolverConfig {
  double t_end = 1.0;
  double dt_max = 1e-3;
  double cfl_safety = 0.5;                            // fraction of the advective limit
  AdvectionScheme scheme = AdvectionScheme::Upwind;   // Central retained for convergence studies
  double positivity_tol = 1e-12;
  int snapshot_every = 100;    // steps between stored field snapshots
  int diagnostics_every = 10;  // steps between diagnostics records
};

/// Solve a tridiagonal system with the Thomas algorithm.  lower[0] and
/// upper[n-1] are ignored.  Rows must be (weakly) diagonally dominant:
/// |diag_i| >= |lower_i| + |upper_i| with diag_i != 0 — the backward-Euler
/// diffusion matrices used here satisfy this strictly.  Throws
/// IllConditionedError otherwise, or if a pivot collapses.
std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                      const std::vector<double>& diag,
                                      const std::vector<double>& upper,
                                      const std::vector<double>& rhs);

/// Conservative chemotactic flux alpha * chem_x * density at the faces.
/// Upwind picks the donor cell by the sign of the face velocity; Central
/// averages the two neighbors.  Boundary faces carry zero (no-flux walls;
/// boundary influxes enter the step as explicit sources).
FaceField chemotactic_face_flux(const Field& density, const Field& chemical, double alpha,
                                AdvectionScheme scheme);

/// One backward-Euler diffusion + decay solve:
///   (1 + dt*decay) x - dt*D*Lap x = old + dt*(-div(flux) + source)
/// with homogeneous-Neumann ghost cells.  flux may be null (no advection).
Field implicit_update(const Field& old, double diffusion, double decay, double dt,
                      const FaceField* flux, const std::vector<double>& source);

/// Optional manufactured/external volume sources, evaluated at (x, t_old).
struct SourceSet {
  std::function<double(double, double)> su, sv, sa, sb;
};

/// Advance the coupled system by one IMEX step of size dt: diffusion and
/// decay implicit, chemotactic advection and reactions explicit, all
/// explicit terms read from the old state.  The influx gradient g is taken
/// at the new time so the discrete u-mass balance is exact.
State step(const State& state, const Parameters& params, const ModelFunctions& funcs,
           const SolverConfig& config, double dt, const SourceSet* extra = nullptr,
           long step_index = -1);

/// Advective stability limit: cfl_safety * dx / max(1e-14, max |alpha * grad|),
/// capped by dt_max.
double cfl_dt(const State& state, const Parameters& params, const SolverConfig& config);

struct Trajectory {
  Parameters params;
  ModelFunctions funcs;
  SolverConfig config;
  std::vector<State> snapshots;                 // first at t=0, last at t_end
  std::vector<DiagnosticsRecord> diagnostics;   // first at t=0, last at t_end
  long total_steps = 0;
};

/// March from t=0 to t_end with adaptive dt = cfl_dt, the last step clipped
/// to land on t_end exactly.  Deterministic: identical inputs give identical
/// trajectories.  Throws DivergenceError when a field goes non-finite.
Trajectory simulate(const Parameters& params, const ModelFunctions& funcs,
                    const InitialData& init, const MeshPtr& mesh, const SolverConfig& config,
                    const SourceSet* extra = nullptr);

}  // namespace chemoflux
