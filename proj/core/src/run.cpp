#include "chemoflux/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "chemoflux/analysis.hpp"
#include "chemoflux/check.hpp"
#include "chemoflux/output.hpp"
#include "chemoflux/picard.hpp"
#include "chemoflux/solver.hpp"

namespace chemoflux {

using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string path_join(const std::string& dir, const std::string& name) {
  if (dir.empty()) return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void write_provenance(const RunConfig& cfg) {
  std::string text = "tool: chemoflux ";
  text += kVersion;
  text += "\nmode: " + to_string(cfg.mode) + "\n";
  write_file(path_join(cfg.output.dir, "provenance.txt"), text);
}

int run_simulate(const RunConfig& cfg, std::ostream& log) {
  const MeshPtr mesh = build_mesh(cfg.mesh.n_cells);
  const Trajectory traj = simulate(cfg.params, cfg.funcs, cfg.initial, mesh, cfg.solver);

  if (cfg.output.csv) {
    write_file(path_join(cfg.output.dir, "fields.csv"), fields_csv(traj));
    write_file(path_join(cfg.output.dir, "diagnostics.csv"), diagnostics_csv(traj.diagnostics));
  }
  if (cfg.output.json) {
    write_file(path_join(cfg.output.dir, "summary.json"), summary_json(traj, write_config(cfg)));
  }
  if (cfg.output.svg) {
    const State& last = traj.snapshots.back();
    std::vector<PlotSeries> profiles;
    for (const auto& [name, field] :
         {std::pair<const char*, const Field*>{"u", &last.u}, {"v", &last.v}, {"a", &last.a},
          {"b", &last.b}}) {
      profiles.push_back({name, mesh->cell_centers(), field->values});
    }
    write_file(path_join(cfg.output.dir, "profiles.svg"),
               svg_plot("final profiles", "x", "value", profiles));

    std::vector<double> ts;
    std::vector<double> ubar, vbar, abar, bbar;
    for (const auto& r : traj.diagnostics) {
      ts.push_back(r.t);
      ubar.push_back(r.ubar);
      vbar.push_back(r.vbar);
      abar.push_back(r.abar);
      bbar.push_back(r.bbar);
    }
    write_file(path_join(cfg.output.dir, "averages.svg"),
               svg_plot("field averages", "t", "average",
                        {{"ubar", ts, ubar},
                         {"vbar", ts, vbar},
                         {"abar", ts, abar},
                         {"bbar", ts, bbar}}));
  }
  write_provenance(cfg);

  const DiagnosticsRecord& fin = traj.diagnostics.back();
  log << "simulate: " << traj.total_steps << " steps to t=" << format_double(fin.t)
      << ", argmax_u cell " << fin.argmax_u << "/" << (cfg.mesh.n_cells - 1) << ", min field "
      << format_double(std::min(std::min(fin.min_u, fin.min_v), std::min(fin.min_a, fin.min_b)))
      << ", wrote " << cfg.output.dir << "\n";
  return kExitOk;
}

int run_picard(const RunConfig& cfg, std::ostream& log) {
  const MeshPtr mesh = build_mesh(cfg.mesh.n_cells);
  const std::vector<ContractionReport> reports =
      run_contraction_study(cfg.params, cfg.funcs, cfg.initial, mesh, cfg.picard.horizons,
                            cfg.picard.iterations, cfg.picard.time_steps, cfg.solver.scheme);
  if (cfg.output.json) {
    write_file(path_join(cfg.output.dir, "picard.json"), picard_json(reports));
  }
  if (cfg.output.csv) {
    std::vector<std::vector<double>> rows;
    for (const auto& rep : reports) {
      for (size_t k = 0; k < rep.deltas.size(); ++k) {
        rows.push_back({rep.horizon, static_cast<double>(k + 1), rep.deltas[k],
                        k > 0 ? rep.ratios[k - 1] : std::nan("")});
      }
    }
    write_file(path_join(cfg.output.dir, "picard.csv"),
               csv_table({"horizon", "iterate", "delta", "ratio"}, rows));
  }
  write_provenance(cfg);

  for (const auto& rep : reports) {
    log << "picard: T=" << format_double(rep.horizon) << " "
        << (rep.contractive ? "contractive" : "NOT contractive");
    if (!rep.ratios.empty()) log << ", last ratio " << format_double(rep.ratios.back());
    log << "\n";
  }
  return kExitOk;
}

int run_steady(const RunConfig& cfg, std::ostream& log) {
  const MeshPtr mesh = build_mesh(cfg.mesh.n_cells);
  const State prof = steady_order0(cfg.steady.profile, mesh);
  if (cfg.output.csv) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < mesh->n_cells(); ++i) {
      rows.push_back({mesh->cell_center(i), prof.b[i], prof.a[i], prof.u[i], prof.v[i]});
    }
    write_file(path_join(cfg.output.dir, "steady_profiles.csv"),
               csv_table({"x", "b", "a", "u0", "v0"}, rows));
  }

  const SteadyResidualReport rep = steady_residuals(cfg.steady.profile, cfg.steady.grid_points);
  json j;
  j["residuals"] = {{"ode_b", rep.ode_b},
                    {"ode_a", rep.ode_a},
                    {"first_integral_b", rep.first_integral_b},
                    {"exp_u", rep.exp_u},
                    {"exp_v", rep.exp_v},
                    {"max", rep.max_residual()}};
  j["grid_points"] = cfg.steady.grid_points;

  if (cfg.steady.relax) {
    ScaledSystem sys;
    sys.delta = cfg.steady.profile.delta;
    sys.gamma = cfg.steady.profile.gamma;
    sys.g1 = cfg.steady.g1;
    sys.g2 = cfg.steady.g2;
    sys.mu_a = cfg.steady.mu_a;
    sys.mu_b = cfg.steady.mu_b;
    const MeshPtr rmesh = build_mesh(cfg.steady.relax_cells);
    const State start = steady_order0(cfg.steady.profile, rmesh);
    RelaxConfig rcfg;
    const State relaxed = steady_relax(sys, cfg.steady.epsilon, cfg.steady.q, start, rcfg);

    // how well the relaxed cell density tracks u = u(0) e^{Delta (a - a(0))}
    double worst = 0.0;
    for (int i = 0; i < rmesh->n_cells(); ++i) {
      const double predicted =
          relaxed.u[0] * std::exp(sys.delta * (relaxed.a[i] - relaxed.a[0]));
      worst = std::max(worst, std::abs(relaxed.u[i] - predicted));
    }
    j["relax"] = {{"cells", cfg.steady.relax_cells},
                  {"epsilon", cfg.steady.epsilon},
                  {"q", cfg.steady.q},
                  {"exp_relation_residual", worst},
                  {"t_final", relaxed.t}};
    if (cfg.output.csv) {
      std::vector<std::vector<double>> rows;
      for (int i = 0; i < rmesh->n_cells(); ++i) {
        rows.push_back(
            {rmesh->cell_center(i), relaxed.u[i], relaxed.v[i], relaxed.a[i], relaxed.b[i]});
      }
      write_file(path_join(cfg.output.dir, "steady_relaxed.csv"),
                 csv_table({"x", "u", "v", "a", "b"}, rows));
    }
    log << "steady: relax exp-relation residual " << format_double(worst) << "\n";
  }

  if (cfg.output.json) {
    write_file(path_join(cfg.output.dir, "steady.json"), j.dump(2) + "\n");
  }
  write_provenance(cfg);
  log << "steady: max closed-form residual " << format_double(rep.max_residual()) << " on "
      << cfg.steady.grid_points << " points\n";
  return kExitOk;
}

int run_averages(const RunConfig& cfg, std::ostream& log) {
  const MeshPtr mesh = build_mesh(cfg.mesh.n_cells);
  Field u0(mesh), v0(mesh), a0(mesh), b0(mesh);
  cfg.initial.build(mesh, u0, v0, a0, b0);

  AverageDynamics dyn;
  dyn.ubar0 = integrate(u0);
  dyn.vbar0 = integrate(v0);
  dyn.abar0 = integrate(a0);
  dyn.bbar0 = integrate(b0);
  dyn.params = cfg.params;
  dyn.g = cfg.funcs.g;

  bool have_bounds = true;
  try {
    (void)vbar_abar_growth_bounds(cfg.averages.t_end, dyn, cfg.funcs);
  } catch (const Error&) {
    have_bounds = false;
  }

  TimeSeries sim_ubar, sim_vbar, sim_abar, sim_bbar;
  double max_err_u = 0.0, max_err_b = 0.0;
  if (cfg.averages.compare) {
    SolverConfig scfg = cfg.solver;
    scfg.t_end = cfg.averages.t_end;
    const Trajectory traj = simulate(cfg.params, cfg.funcs, cfg.initial, mesh, scfg);
    for (const auto& r : traj.diagnostics) {
      sim_ubar.t.push_back(r.t);
      sim_ubar.value.push_back(r.ubar);
      sim_vbar.t.push_back(r.t);
      sim_vbar.value.push_back(r.vbar);
      sim_abar.t.push_back(r.t);
      sim_abar.value.push_back(r.abar);
      sim_bbar.t.push_back(r.t);
      sim_bbar.value.push_back(r.bbar);
    }
  }

  std::vector<std::string> header = {"t", "ubar", "bbar"};
  if (have_bounds) {
    header.push_back("vbar_bound");
    header.push_back("abar_bound");
  }
  if (cfg.averages.compare) {
    header.insert(header.end(), {"sim_ubar", "sim_vbar", "sim_abar", "sim_bbar"});
  }

  std::vector<std::vector<double>> rows;
  for (int k = 0; k < cfg.averages.samples; ++k) {
    const double t = cfg.averages.t_end * k / (cfg.averages.samples - 1);
    std::vector<double> row = {t, ubar_exact(t, dyn), bbar_exact(t, dyn)};
    if (have_bounds) {
      const GrowthBounds gb = vbar_abar_growth_bounds(t, dyn, cfg.funcs);
      row.push_back(gb.vbar_bound);
      row.push_back(gb.abar_bound);
    }
    if (cfg.averages.compare) {
      row.push_back(sim_ubar.interp(t));
      row.push_back(sim_vbar.interp(t));
      row.push_back(sim_abar.interp(t));
      row.push_back(sim_bbar.interp(t));
      max_err_u = std::max(max_err_u, std::abs(row[1] - sim_ubar.interp(t)));
      max_err_b = std::max(max_err_b, std::abs(row[2] - sim_bbar.interp(t)));
    }
    rows.push_back(std::move(row));
  }

  if (cfg.output.csv) {
    write_file(path_join(cfg.output.dir, "averages.csv"), csv_table(header, rows));
  }
  if (cfg.output.json) {
    json j;
    j["t_end"] = cfg.averages.t_end;
    j["samples"] = cfg.averages.samples;
    j["initial"] = {{"ubar", dyn.ubar0}, {"vbar", dyn.vbar0}, {"abar", dyn.abar0},
                    {"bbar", dyn.bbar0}};
    j["growth_bounds_available"] = have_bounds;
    if (cfg.averages.compare) {
      j["compare"] = {{"max_err_ubar", max_err_u}, {"max_err_bbar", max_err_b}};
    }
    write_file(path_join(cfg.output.dir, "averages.json"), j.dump(2) + "\n");
  }
  if (cfg.output.svg) {
    std::vector<double> ts, ub, bb;
    for (const auto& row : rows) {
      ts.push_back(row[0]);
      ub.push_back(row[1]);
      bb.push_back(row[2]);
    }
    std::vector<PlotSeries> series = {{"ubar", ts, ub}, {"bbar", ts, bb}};
    if (cfg.averages.compare) {
      series.push_back({"sim ubar", sim_ubar.t, sim_ubar.value});
      series.push_back({"sim bbar", sim_bbar.t, sim_bbar.value});
    }
    write_file(path_join(cfg.output.dir, "averages.svg"),
               svg_plot("average dynamics", "t", "average", series));
  }
  write_provenance(cfg);

  log << "averages: " << cfg.averages.samples << " samples to t="
      << format_double(cfg.averages.t_end);
  if (cfg.averages.compare) {
    log << ", max |sim - exact|: ubar " << format_double(max_err_u) << ", bbar "
        << format_double(max_err_b);
  }
  log << "\n";
  return kExitOk;
}

int run_check(const RunConfig& cfg, std::ostream& log) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, 8);
  if (const char* env = std::getenv("CHEMOFLUX_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  const CheckSuite suite = run_checks(threads);
  log << format_check_report(suite);
  if (cfg.output.json) {
    json arr = json::array();
    for (const auto& r : suite.results) {
      arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    write_file(path_join(cfg.output.dir, "check.json"),
               json{{"checks", arr}, {"all_passed", suite.all_passed()}}.dump(2) + "\n");
  }
  return suite.all_passed() ? kExitOk : kExitCheckFailure;
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
  switch (config.mode) {
    case RunMode::Simulate:
      return run_simulate(config, log);
    case RunMode::Picard:
      return run_picard(config, log);
    case RunMode::Steady:
      return run_steady(config, log);
    case RunMode::Averages:
      return run_averages(config, log);
    case RunMode::Check:
      return run_check(config, log);
  }
  return kExitConfig;
}

}  // namespace chemoflux
