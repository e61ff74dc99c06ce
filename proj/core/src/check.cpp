#include "chemoflux/check.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <sstream>

#include "chemoflux/analysis.hpp"
#include "chemoflux/config.hpp"
#include "chemoflux/mesh.hpp"
#include "chemoflux/model.hpp"
#include "chemoflux/output.hpp"
#include "chemoflux/solver.hpp"

namespace chemoflux {

namespace {

// splitmix64: tiny deterministic generator for the self-checks.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  double next() {  // uniform in [0, 1)
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
};

std::string ok_detail(double measured, double tol) {
  std::ostringstream oss;
  oss << "max error " << measured << " (tol " << tol << ")";
  return oss.str();
}

CheckResult check_quadrature() {
  CheckResult r{"mesh-quadrature", false, "", 0.0};
  // midpoint rule on sin(pi x): exact 2/pi, second-order error ratio ~4
  const double exact = 2.0 / 3.141592653589793;
  auto err_at = [&](int n) {
    Field f = Field::from(build_mesh(n), [](double x) { return std::sin(3.141592653589793 * x); });
    return std::abs(integrate(f) - exact);
  };
  const double e32 = err_at(32), e64 = err_at(64);
  const double ratio = e32 / e64;
  Field one = Field::from(build_mesh(17), [](double) { return 1.0; });
  const double unit_err = std::abs(integrate(one) - 1.0);
  r.pass = ratio > 3.5 && ratio < 4.5 && unit_err <= 1e-14;
  std::ostringstream oss;
  oss << "refinement ratio " << ratio << " (want ~4), unit integral error " << unit_err;
  r.detail = oss.str();
  return r;
}

CheckResult check_tridiagonal() {
  CheckResult r{"tridiagonal", false, "", 0.0};
  Rng rng(12345);
  const int n = 80;
  std::vector<double> lo(n), di(n), up(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = -rng.next();
    up[i] = -rng.next();
    di[i] = std::abs(lo[i]) + std::abs(up[i]) + 0.5 + rng.next();
    rhs[i] = 2.0 * rng.next() - 1.0;
  }
  const std::vector<double> x = solve_tridiagonal(lo, di, up, rhs);
  double resid = 0.0;
  for (int i = 0; i < n; ++i) {
    double ax = di[i] * x[i];
    if (i > 0) ax += lo[i] * x[i - 1];
    if (i + 1 < n) ax += up[i] * x[i + 1];
    resid = std::max(resid, std::abs(ax - rhs[i]));
  }
  const double tol = 1e-12;
  r.pass = resid <= tol;
  r.detail = ok_detail(resid, tol);
  return r;
}

CheckResult check_conservation() {
  CheckResult r{"conservation", false, "", 0.0};
  // no influx, no kinetics, mu = 0: cell mass is exactly conserved
  Parameters p;
  p.mu = 0.0;
  ModelFunctions funcs;  // rho=1, f=h=g=0
  InitialData init;
  init.u = init_gaussian(0.3, 0.1, 1.0, 0.2);
  init.v = init_gaussian(0.7, 0.15, 0.5, 0.1);
  init.a = init_cosine_mode(0.5, 0.2, 1);
  init.b = init_cosine_mode(0.4, 0.1, 2);
  SolverConfig cfg;
  cfg.t_end = 0.05;
  cfg.dt_max = 1e-3;
  const Trajectory traj = simulate(p, funcs, init, build_mesh(64), cfg);
  const double u0 = traj.diagnostics.front().ubar;
  double drift = 0.0;
  for (const auto& rec : traj.diagnostics) drift = std::max(drift, std::abs(rec.ubar - u0));
  const double tol = 1e-13;
  r.pass = drift <= tol;
  r.detail = ok_detail(drift, tol);
  return r;
}

CheckResult check_mass_balance() {
  CheckResult r{"mass-balance", false, "", 0.0};
  // discrete balance: ubar_{k+1} (1 + mu dt) = ubar_k + dt d1 g(t_{k+1})
  const Figure1Preset fig = figure1_preset();
  const MeshPtr mesh = build_mesh(50);
  State s;
  s.t = 0.0;
  fig.initial.build(mesh, s.u, s.v, s.a, s.b);
  SolverConfig cfg;
  const double dt = 5e-4;
  double ubar = integrate(s.u);
  double worst = 0.0;
  for (int k = 0; k < 40; ++k) {
    s = step(s, fig.params, fig.funcs, cfg, dt);
    ubar = (ubar + dt * fig.params.d1 * fig.funcs.g(s.t)) / (1.0 + fig.params.mu * dt);
    worst = std::max(worst, std::abs(integrate(s.u) - ubar));
  }
  const double tol = 1e-13;
  r.pass = worst <= tol;
  r.detail = ok_detail(worst, tol);
  return r;
}

CheckResult check_greens() {
  CheckResult r{"greens-identities", false, "", 0.0};
  // constant source: solution is const/eta^2 * scale; and the kernel itself
  // integrates to 1/eta^2 for every x.
  double worst = 0.0;
  for (double eta : {0.5, 1.0, 2.6457513110645907}) {
    const std::vector<double> xs = {0.0, 0.17, 0.5, 0.83, 1.0};
    const std::vector<double> sol =
        greens_solve([](double) { return 1.0; }, eta, 1.0, xs);
    for (double v : sol) worst = std::max(worst, std::abs(v - 1.0 / (eta * eta)));
    for (double x : xs) {
      const double integral = adaptive_simpson(
          [&](double s) { return greens_function_neumann(x, s, eta); }, 0.0, 1.0, 1e-12);
      worst = std::max(worst, std::abs(integral - 1.0 / (eta * eta)));
    }
  }
  const double tol = 1e-8;
  r.pass = worst <= tol;
  r.detail = ok_detail(worst, tol);
  return r;
}

CheckResult check_steady() {
  CheckResult r{"steady-residuals", false, "", 0.0};
  Rng rng(777);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    SteadyProfileParams sp;
    sp.gamma = 0.5 + 1.5 * rng.next();
    sp.delta = 0.5 + 1.5 * rng.next();
    sp.p = 0.5 + 1.5 * rng.next();
    sp.k1 = 0.5 + 1.5 * rng.next();
    sp.x0 = 0.5 * rng.next();
    sp.c = 0.5 + rng.next();
    sp.d = 0.5 + rng.next();
    const SteadyResidualReport rep = steady_residuals(sp, 4000);
    worst = std::max(worst, rep.max_residual());
  }
  const double tol = 1e-8;
  r.pass = worst <= tol;
  r.detail = ok_detail(worst, tol);
  return r;
}

CheckResult check_round_trip() {
  CheckResult r{"config-round-trip", false, "", 0.0};
  const std::string minimal = "{\"preset\": \"figure1\", \"mode\": \"simulate\"}";
  const RunConfig a = parse_config(minimal);
  const RunConfig b = parse_config(write_config(a));
  bool pass = (a == b);
  // a custom config exercising every block
  const std::string custom = R"({
    "mode": "picard",
    "mesh": {"n_cells": 32},
    "solver": {"t_end": 0.5, "dt_max": 0.0002, "scheme": "central"},
    "params": {"alpha1": 3.5, "mu": 0.25},
    "functions": {"g": {"preset": "ramp", "g0": 0.7, "tau": 2.0},
                   "h": {"preset": "saturating", "coeff": 0.3}},
    "initial": {"u": {"preset": "gaussian", "center": 0.25, "width": 0.05,
                       "amplitude": 2.0, "offset": 0.1}},
    "picard": {"horizons": [0.0125, 0.025], "iterations": 4, "time_steps": 25}
  })";
  const RunConfig c = parse_config(custom);
  const RunConfig d = parse_config(write_config(c));
  pass = pass && (c == d);
  r.pass = pass;
  r.detail = pass ? "parse(write(config)) == config" : "round-trip mismatch";
  return r;
}

CheckResult check_determinism() {
  CheckResult r{"determinism", false, "", 0.0};
  auto run_once = [&]() {
    const Figure1Preset fig = figure1_preset();
    SolverConfig cfg;
    cfg.t_end = 0.02;
    cfg.dt_max = 1e-3;
    cfg.snapshot_every = 5;
    cfg.diagnostics_every = 2;
    const Trajectory traj = simulate(fig.params, fig.funcs, fig.initial, build_mesh(40), cfg);
    return fields_csv(traj) + diagnostics_csv(traj.diagnostics) + summary_json(traj);
  };
  const std::string first = run_once();
  const std::string second = run_once();
  r.pass = (first == second);
  r.detail = r.pass ? "two runs byte-identical" : "outputs differ between identical runs";
  return r;
}

CheckResult check_averages() {
  CheckResult r{"average-dynamics", false, "", 0.0};
  const Figure1Preset fig = figure1_preset();
  SolverConfig cfg;
  cfg.t_end = 0.5;
  cfg.dt_max = 2e-4;
  cfg.diagnostics_every = 10;
  const Trajectory traj = simulate(fig.params, fig.funcs, fig.initial, build_mesh(100), cfg);
  AverageDynamics dyn;
  dyn.ubar0 = traj.diagnostics.front().ubar;
  dyn.bbar0 = traj.diagnostics.front().bbar;
  dyn.params = fig.params;
  dyn.g = fig.funcs.g;
  double worst = 0.0;
  for (const auto& rec : traj.diagnostics) {
    worst = std::max(worst, std::abs(rec.ubar - ubar_exact(rec.t, dyn)));
    worst = std::max(worst, std::abs(rec.bbar - bbar_exact(rec.t, dyn)));
  }
  const double tol = 5e-3;
  r.pass = worst <= tol;
  r.detail = ok_detail(worst, tol);
  return r;
}

using CheckFn = CheckResult (*)();

CheckResult timed(CheckFn fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r.name = "(exception)";
    r.pass = false;
    r.detail = std::string("threw: ") + e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  r.seconds = std::chrono::duration<double>(t1 - t0).count();
  return r;
}

}  // namespace

CheckSuite run_checks(int max_threads) {
  static const std::vector<CheckFn> battery = {
      check_quadrature, check_tridiagonal, check_conservation, check_mass_balance,
      check_greens,     check_steady,      check_round_trip,   check_determinism,
      check_averages};

  CheckSuite suite;
  suite.results.resize(battery.size());
  if (max_threads <= 1) {
    for (size_t i = 0; i < battery.size(); ++i) suite.results[i] = timed(battery[i]);
    return suite;
  }

  size_t next = 0;
  while (next < battery.size()) {
    const size_t batch = std::min<size_t>(max_threads, battery.size() - next);
    std::vector<std::future<CheckResult>> futures;
    futures.reserve(batch);
    for (size_t j = 0; j < batch; ++j) {
      futures.push_back(std::async(std::launch::async, timed, battery[next + j]));
    }
    for (size_t j = 0; j < batch; ++j) suite.results[next + j] = futures[j].get();
    next += batch;
  }
  return suite;
}

std::string format_check_report(const CheckSuite& suite) {
  std::ostringstream oss;
  for (const auto& r : suite.results) {
    oss << (r.pass ? "[ OK ]" : "[FAIL]") << ' ' << r.name << ": " << r.detail << '\n';
  }
  oss << (suite.all_passed() ? "all checks passed" : "CHECK FAILURES PRESENT") << '\n';
  return oss.str();
}

}  // namespace chemoflux
