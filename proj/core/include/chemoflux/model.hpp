#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chemoflux/mesh.hpp"

namespace chemoflux {

/// Constants of the four-field system
///
///   u_t = d1 u_xx - alpha1 (u a_x)_x - mu u
///   v_t = d2 v_xx - alpha2 (v b_x)_x + rho(b) f(v)
///   a_t = d3 a_xx + beta1 v - mu_a a
///   b_t = d4 b_xx + beta2 u - mu_b b
///
/// on x in (0,1), with no-flux walls for a and b, a prescribed influx
/// gradient g(t) for u at x=1 and an influx h(b(0,t)) for v at x=0.
struct Parameters {
  double d1 = 0.1;
  double d2 = 0.1;
  double d3 = 1.0;
  double d4 = 7.0;
  double alpha1 = 10.0;
  double alpha2 = 10.0;
  double beta1 = 1.0;
  double beta2 = 10.0;
  double mu = 0.001;
  double mu_a = 1.0;
  double mu_b = 1.0;
  double k_capacity = 1.0;  // carrying capacity for the v kinetics
};

/// Scalar model function, represented as a tagged preset so that analytic
/// properties (boundedness, sup) stay available.  Table gives a piecewise
/// linear escape hatch, clamped outside its abscissa range.
struct ScalarFunc {
  enum class Kind { Zero, Constant, Linear, Logistic, Saturating, Ramp, Table };

  Kind kind = Kind::Zero;
  double c0 = 0.0;  // value / slope / rate coefficient, depending on kind
  double c1 = 1.0;  // capacity (Logistic) or time constant (Ramp)
  std::vector<double> xs, ys;

  double operator()(double x) const;

  /// Sup of the function over x >= 0, when finite.
  std::optional<double> sup_nonneg() const;
  /// Sup of |f| over all arguments, when finite.
  std::optional<double> sup_abs() const;
  bool bounded() const { return sup_abs().has_value(); }
};

ScalarFunc preset_zero();
ScalarFunc preset_constant(double value);
/// value(x) = slope * x.
ScalarFunc preset_linear(double slope);
/// f(v) = rho0 * v * (1 - v/K): logistic kinetics with capacity K.
ScalarFunc preset_logistic_f(double rho0, double K);
/// Linear kinetics f(v) = rho0 * v (no capacity).
ScalarFunc preset_linear_f(double rho0);
/// h(b) = h0 * b / (1 + b): saturating, sup -> h0.
ScalarFunc preset_saturating(double h0);
/// rho(b) = rho0 * b / (1 + b).
ScalarFunc preset_saturating_rho(double rho0);
ScalarFunc preset_constant_rho(double rho0);
/// g(t) = g0 * (1 - exp(-t/tau)): smooth switch-on influx, g(0) = 0.
ScalarFunc preset_ramp_g(double g0, double tau);
/// Piecewise-linear table, clamped to the end values outside [xs.front(), xs.back()].
ScalarFunc preset_table(std::vector<double> xs, std::vector<double> ys);

/// The four function slots of the model.
struct ModelFunctions {
  ScalarFunc rho = preset_constant(1.0);  // kinetic modulation, function of b
  ScalarFunc f = preset_zero();           // kinetics of v
  ScalarFunc h = preset_zero();           // v boundary influx, function of b(0,t)
  ScalarFunc g = preset_zero();           // u boundary gradient, function of t
};

/// Per-field initial profile.
struct FieldInit {
  enum class Kind { Constant, Gaussian, CosineMode, Table };

  Kind kind = Kind::Constant;
  double value = 0.0;                      // Constant
  double center = 0.5, width = 0.1;        // Gaussian
  double amplitude = 0.0, offset = 0.0;    // Gaussian: offset + amplitude*exp(...)
  double mean = 0.0;                       // CosineMode: mean + amplitude*cos(k pi x)
  int mode = 1;
  std::vector<double> table;               // Table: one value per cell

  Field build(const MeshPtr& mesh) const;
};

FieldInit init_constant(double value);
FieldInit init_gaussian(double center, double width, double amplitude, double offset);
FieldInit init_cosine_mode(double mean, double amplitude, int mode);
FieldInit init_table(std::vector<double> values);

struct InitialData {
  FieldInit u = init_constant(0.0);
  FieldInit v = init_constant(0.0);
  FieldInit a = init_constant(0.0);
  FieldInit b = init_constant(0.0);

  /// Sample all four profiles on the mesh.
  void build(const MeshPtr& mesh, Field& u_out, Field& v_out, Field& a_out, Field& b_out) const;
};

/// The four fields at one instant.
struct State {
  double t = 0.0;
  Field u, v, a, b;

  State() = default;
  explicit State(const MeshPtr& mesh) : u(mesh), v(mesh), a(mesh), b(mesh) {}
};

/// One assumption violation found by validate().
struct Violation {
  std::string assumption;  // e.g. "(3) kinetic sign"
  std::string where;       // which slot or parameter
  double sample = 0.0;     // offending sample point, when applicable
  double value = 0.0;
  bool waived = false;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool passed() const {
    for (const auto& v : violations)
      if (!v.waived) return false;
    return true;
  }
};

/// Check positivity of the constants and the structural assumptions on
/// rho, f, h, g by analytic preset properties plus sampling (v on [0, 10K],
/// b and t on [0, 100]).  Non-finite samples throw NonFiniteSampleError.
///
/// waive_figure1 suppresses the two violations the linearized benchmark
/// preset is known to carry: linear kinetics without capacity and an
/// unbounded linear boundary function.
ValidationReport validate(const Parameters& params, const ModelFunctions& funcs,
                          int sample_count = 256, bool waive_figure1 = false);

/// The benchmark configuration: d1=d2=0.1, d3=1, d4=7, alpha=10, mu=0.001,
/// mu_a=mu_b=1, beta1=1, beta2=10, kinetics 0.001*v, h(b)=b, ramp influx,
/// uniform initial u=v=0.1 and a=b=0.
struct Figure1Preset {
  Parameters params;
  ModelFunctions funcs;
  InitialData initial;
};

Figure1Preset figure1_preset();

}  // namespace chemoflux
