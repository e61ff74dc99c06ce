#pragma once

#include <string>
#include <vector>

#include "chemoflux/model.hpp"

namespace chemoflux {

/// Scalar monitors of one state, recorded along a run.
struct DiagnosticsRecord {
  double t = 0.0;

  double min_u = 0.0, min_v = 0.0, min_a = 0.0, min_b = 0.0;
  int argmin_u = 0, argmin_v = 0, argmin_a = 0, argmin_b = 0;

  double ubar = 0.0, vbar = 0.0, abar = 0.0, bbar = 0.0;  // domain averages
  double l2_u = 0.0, l2_v = 0.0;
  double h1_a = 0.0, h1_b = 0.0;
  double energy = 0.0;  // l2_u^2 + l2_v^2 + h1_a^2 + h1_b^2

  double u_right = 0.0;  // u in the last cell
  double v_left = 0.0;   // v in the first cell
  double b_left = 0.0;   // b in the first cell
  double flux_g = 0.0;   // d1 * g(t)
  double flux_h = 0.0;   // d2 * h(b_left)

  int argmax_u = 0, argmax_v = 0;  // cell index of the maximum (first on ties)
  double right_mass_u = 0.0;       // mass fraction in [0.8, 1]
  double right_mass_v = 0.0;
};

/// Fraction of the field's mass in [threshold, 1], with partial-cell overlap
/// weighting.  Zero total mass yields 0.
double right_mass_fraction(const Field& f, double threshold = 0.8);

DiagnosticsRecord record(const State& state, const Parameters& params,
                         const ModelFunctions& funcs);

struct PositivityVerdict {
  bool pass = true;
  std::string field;  // first offending field when pass = false
  int cell = -1;
  double time = 0.0;
  double value = 0.0;
};

/// Pass iff every recorded minimum stays >= -tol.
PositivityVerdict positivity_verdict(const std::vector<DiagnosticsRecord>& records,
                                     double tol = 1e-12);

struct BoundednessReport {
  double sup_l2_u = 0.0, sup_l2_v = 0.0, sup_h1_a = 0.0, sup_h1_b = 0.0;
  double sup_energy = 0.0;
  double energy_growth = 0.0;  // sup energy / reference (first record, guarded)
  bool all_finite = true;
  bool possible_blowup = false;  // advisory only, never an error
};

BoundednessReport boundedness_report(const std::vector<DiagnosticsRecord>& records,
                                     double growth_factor = 1e3);

}  // namespace chemoflux
