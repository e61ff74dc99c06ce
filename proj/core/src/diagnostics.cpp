#include "chemoflux/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace chemoflux {

double right_mass_fraction(const Field& f, double threshold) {
  const double dx = f.mesh->dx();
  double total = 0.0, right = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double lo = i * dx, hi = (i + 1) * dx;
    total += f[i] * dx;
    const double overlap = std::max(0.0, std::min(hi, 1.0) - std::max(lo, threshold));
    right += f[i] * overlap;
  }
  if (total == 0.0) return 0.0;
  return right / total;
}

namespace {

void min_and_argmin(const Field& f, double& min_out, int& arg_out) {
  auto it = std::min_element(f.values.begin(), f.values.end());
  min_out = *it;
  arg_out = static_cast<int>(it - f.values.begin());
}

int argmax(const Field& f) {
  return static_cast<int>(std::max_element(f.values.begin(), f.values.end()) -
                          f.values.begin());
}

}  // namespace

DiagnosticsRecord record(const State& s, const Parameters& p, const ModelFunctions& funcs) {
  DiagnosticsRecord r;
  r.t = s.t;

  min_and_argmin(s.u, r.min_u, r.argmin_u);
  min_and_argmin(s.v, r.min_v, r.argmin_v);
  min_and_argmin(s.a, r.min_a, r.argmin_a);
  min_and_argmin(s.b, r.min_b, r.argmin_b);

  r.ubar = integrate(s.u);
  r.vbar = integrate(s.v);
  r.abar = integrate(s.a);
  r.bbar = integrate(s.b);

  r.l2_u = l2_norm(s.u);
  r.l2_v = l2_norm(s.v);
  r.h1_a = h1_seminorm(s.a);
  r.h1_b = h1_seminorm(s.b);
  r.energy = r.l2_u * r.l2_u + r.l2_v * r.l2_v + r.h1_a * r.h1_a + r.h1_b * r.h1_b;

  const int n = s.u.size();
  r.u_right = s.u[n - 1];
  r.v_left = s.v[0];
  r.b_left = s.b[0];
  r.flux_g = p.d1 * funcs.g(s.t);
  r.flux_h = p.d2 * funcs.h(r.b_left);

  r.argmax_u = argmax(s.u);
  r.argmax_v = argmax(s.v);
  r.right_mass_u = right_mass_fraction(s.u);
  r.right_mass_v = right_mass_fraction(s.v);
  return r;
}

PositivityVerdict positivity_verdict(const std::vector<DiagnosticsRecord>& records, double tol) {
  PositivityVerdict verdict;
  for (const auto& r : records) {
    const struct {
      const char* name;
      double min;
      int cell;
    } fields[] = {{"u", r.min_u, r.argmin_u},
                  {"v", r.min_v, r.argmin_v},
                  {"a", r.min_a, r.argmin_a},
                  {"b", r.min_b, r.argmin_b}};
    for (const auto& f : fields) {
      if (f.min < -tol) {
        verdict.pass = false;
        verdict.field = f.name;
        verdict.cell = f.cell;
        verdict.time = r.t;
        verdict.value = f.min;
        return verdict;
      }
    }
  }
  return verdict;
}

BoundednessReport boundedness_report(const std::vector<DiagnosticsRecord>& records,
                                     double growth_factor) {
  BoundednessReport rep;
  for (const auto& r : records) {
    rep.sup_l2_u = std::max(rep.sup_l2_u, r.l2_u);
    rep.sup_l2_v = std::max(rep.sup_l2_v, r.l2_v);
    rep.sup_h1_a = std::max(rep.sup_h1_a, r.h1_a);
    rep.sup_h1_b = std::max(rep.sup_h1_b, r.h1_b);
    rep.sup_energy = std::max(rep.sup_energy, r.energy);
    for (double x : {r.l2_u, r.l2_v, r.h1_a, r.h1_b, r.energy, r.ubar, r.vbar, r.abar, r.bbar}) {
      if (!std::isfinite(x)) rep.all_finite = false;
    }
  }
  if (!records.empty()) {
    // Reference level: the initial energy, falling back to a floor so a run
    // started from the zero state does not trip the advisory flag.
    const double reference = std::max(records.front().energy, 1e-12);
    rep.energy_growth = rep.sup_energy / reference;
    rep.possible_blowup = !rep.all_finite || rep.energy_growth > growth_factor;
  }
  return rep;
}

}  // namespace chemoflux
