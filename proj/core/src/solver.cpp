#include "chemoflux/solver.hpp"

#include <cmath>
#include <string>

namespace chemoflux {

std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                      const std::vector<double>& diag,
                                      const std::vector<double>& upper,
                                      const std::vector<double>& rhs) {
  const size_t n = diag.size();
  if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw Error("tridiagonal solve: vector sizes must match and be nonzero");
  }
  for (size_t i = 0; i < n; ++i) {
    const double l = i > 0 ? std::abs(lower[i]) : 0.0;
    const double u = i + 1 < n ? std::abs(upper[i]) : 0.0;
    if (diag[i] == 0.0 || std::abs(diag[i]) < l + u) {
      throw IllConditionedError("tridiagonal row " + std::to_string(i) +
                                " is not diagonally dominant");
    }
  }

  // Thomas algorithm: forward elimination, back substitution.
  std::vector<double> c(n, 0.0), x(n);
  double piv = diag[0];
  c[0] = n > 1 ? upper[0] / piv : 0.0;
  x[0] = rhs[0] / piv;
  for (size_t i = 1; i < n; ++i) {
    piv = diag[i] - lower[i] * c[i - 1];
    if (std::abs(piv) < 1e-300) {
      throw IllConditionedError("tridiagonal pivot collapsed at row " + std::to_string(i));
    }
    if (i + 1 < n) c[i] = upper[i] / piv;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / piv;
  }
  for (size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

FaceField chemotactic_face_flux(const Field& density, const Field& chemical, double alpha,
                                AdvectionScheme scheme) {
  require_same_mesh(density, chemical);
  const FaceField grad = face_gradient(chemical);
  FaceField flux(density.mesh);
  const int n = density.size();
  for (int j = 1; j < n; ++j) {
    const double vel = alpha * grad[j];
    double face_density;
    if (scheme == AdvectionScheme::Upwind) {
      face_density = vel >= 0.0 ? density[j - 1] : density[j];
    } else {
      face_density = 0.5 * (density[j - 1] + density[j]);
    }
    flux[j] = vel * face_density;
  }
  return flux;
}

Field implicit_update(const Field& old, double diffusion, double decay, double dt,
                      const FaceField* flux, const std::vector<double>& source) {
  const int n = old.size();
  const double dx = old.mesh->dx();
  const double theta = dt * diffusion / (dx * dx);

  std::vector<double> lower(n, -theta), diag(n), upper(n, -theta), rhs(n);
  lower[0] = 0.0;
  upper[n - 1] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double neighbors = (i > 0 ? 1.0 : 0.0) + (i < n - 1 ? 1.0 : 0.0);
    diag[i] = 1.0 + dt * decay + theta * neighbors;
    double advection = 0.0;
    if (flux) advection = -((*flux)[i + 1] - (*flux)[i]) / dx;
    rhs[i] = old[i] + dt * (advection + source[i]);
  }
  return Field(old.mesh, solve_tridiagonal(lower, diag, upper, rhs));
}

namespace {

void throw_if_nonfinite(const State& s, long step_index) {
  const struct {
    const char* name;
    const Field* field;
  } fields[] = {{"u", &s.u}, {"v", &s.v}, {"a", &s.a}, {"b", &s.b}};
  for (const auto& f : fields) {
    for (double x : f.field->values) {
      if (!std::isfinite(x)) throw DivergenceError(f.name, step_index, s.t);
    }
  }
}

}  // namespace

State step(const State& s, const Parameters& p, const ModelFunctions& funcs,
           const SolverConfig& cfg, double dt, const SourceSet* extra, long step_index) {
  const MeshPtr& mesh = s.u.mesh;
  const int n = mesh->n_cells();
  const double dx = mesh->dx();
  const double t_new = s.t + dt;

  const FaceField flux_u = chemotactic_face_flux(s.u, s.a, p.alpha1, cfg.scheme);
  const FaceField flux_v = chemotactic_face_flux(s.v, s.b, p.alpha2, cfg.scheme);

  std::vector<double> src_u(n, 0.0), src_v(n, 0.0), src_a(n, 0.0), src_b(n, 0.0);
  for (int i = 0; i < n; ++i) {
    src_a[i] = p.beta1 * s.v[i];
    src_b[i] = p.beta2 * s.u[i];
    src_v[i] = funcs.rho(s.b[i]) * funcs.f(s.v[i]);
  }
  src_u[n - 1] += p.d1 * funcs.g(t_new) / dx;  // influx gradient at x=1, new-time weighting
  src_v[0] += p.d2 * funcs.h(s.b[0]) / dx;     // influx at x=0 driven by the old b

  if (extra) {
    for (int i = 0; i < n; ++i) {
      const double x = mesh->cell_center(i);
      if (extra->su) src_u[i] += extra->su(x, s.t);
      if (extra->sv) src_v[i] += extra->sv(x, s.t);
      if (extra->sa) src_a[i] += extra->sa(x, s.t);
      if (extra->sb) src_b[i] += extra->sb(x, s.t);
    }
  }

  State out(mesh);
  out.t = t_new;
  out.u = implicit_update(s.u, p.d1, p.mu, dt, &flux_u, src_u);
  out.v = implicit_update(s.v, p.d2, 0.0, dt, &flux_v, src_v);
  out.a = implicit_update(s.a, p.d3, p.mu_a, dt, nullptr, src_a);
  out.b = implicit_update(s.b, p.d4, p.mu_b, dt, nullptr, src_b);
  throw_if_nonfinite(out, step_index);
  return out;
}

double cfl_dt(const State& s, const Parameters& p, const SolverConfig& cfg) {
  const FaceField ga = face_gradient(s.a);
  const FaceField gb = face_gradient(s.b);
  double vmax = 1e-14;
  for (int j = 0; j < ga.size(); ++j) {
    vmax = std::max(vmax, std::abs(p.alpha1 * ga[j]));
    vmax = std::max(vmax, std::abs(p.alpha2 * gb[j]));
  }
  return std::min(cfg.dt_max, cfg.cfl_safety * s.u.mesh->dx() / vmax);
}

Trajectory simulate(const Parameters& p, const ModelFunctions& funcs, const InitialData& init,
                    const MeshPtr& mesh, const SolverConfig& cfg, const SourceSet* extra) {
  if (!(cfg.t_end >= 0.0) || !(cfg.dt_max > 0.0)) {
    throw Error("simulate: t_end must be >= 0 and dt_max > 0");
  }
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
    throw Error("simulate: cfl_safety must lie in (0, 1]");
  }
  if (cfg.snapshot_every < 1 || cfg.diagnostics_every < 1) {
    throw Error("simulate: snapshot_every and diagnostics_every must be >= 1");
  }

  State s(mesh);
  init.build(mesh, s.u, s.v, s.a, s.b);
  s.t = 0.0;
  throw_if_nonfinite(s, 0);

  Trajectory traj;
  traj.params = p;
  traj.funcs = funcs;
  traj.config = cfg;
  traj.snapshots.push_back(s);
  traj.diagnostics.push_back(record(s, p, funcs));

  long k = 0;
  while (s.t < cfg.t_end) {
    double dt = cfl_dt(s, p, cfg);
    bool last = false;
    if (s.t + dt >= cfg.t_end) {
      dt = cfg.t_end - s.t;
      last = true;
    }
    if (dt <= 0.0) break;
    if (!last && dt < 1e-13 * std::max(1.0, cfg.t_end)) {
      throw DivergenceError("time step (advective velocity blew up)", k, s.t);
    }
    s = step(s, p, funcs, cfg, dt, extra, k);
    if (last) s.t = cfg.t_end;  // clip float accumulation
    ++k;
    if (last || k % cfg.diagnostics_every == 0) traj.diagnostics.push_back(record(s, p, funcs));
    if (last || k % cfg.snapshot_every == 0) traj.snapshots.push_back(s);
  }
  traj.total_steps = k;
  return traj;
}

}  // namespace chemoflux
