#include "chemoflux/model.hpp"

#include <algorithm>
#include <cmath>

namespace chemoflux {

double ScalarFunc::operator()(double x) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return c0;
    case Kind::Linear:
      return c0 * x;
    case Kind::Logistic:
      return c0 * x * (1.0 - x / c1);
    case Kind::Saturating:
      return c0 * x / (1.0 + x);
    case Kind::Ramp:
      return c0 * (1.0 - std::exp(-x / c1));
    case Kind::Table: {
      if (xs.empty()) return 0.0;
      if (x <= xs.front()) return ys.front();
      if (x >= xs.back()) return ys.back();
      auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const auto i = static_cast<size_t>(it - xs.begin());
      const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
      return ys[i - 1] + w * (ys[i] - ys[i - 1]);
    }
  }
  return 0.0;
}

std::optional<double> ScalarFunc::sup_nonneg() const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return c0;
    case Kind::Linear:
      return std::nullopt;
    case Kind::Logistic:
      // peak at x = c1/2; unbounded below for x -> inf, but the max value is finite
      return c0 * c1 / 4.0;
    case Kind::Saturating:
      return c0;
    case Kind::Ramp:
      return c0;
    case Kind::Table: {
      if (ys.empty()) return 0.0;
      return *std::max_element(ys.begin(), ys.end());
    }
  }
  return std::nullopt;
}

std::optional<double> ScalarFunc::sup_abs() const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return std::abs(c0);
    case Kind::Linear:
    case Kind::Logistic:
      return std::nullopt;  // unbounded on the real line
    case Kind::Saturating:
    case Kind::Ramp:
      return std::abs(c0);
    case Kind::Table: {
      double m = 0.0;
      for (double y : ys) m = std::max(m, std::abs(y));
      return m;
    }
  }
  return std::nullopt;
}

ScalarFunc preset_zero() { return {}; }

ScalarFunc preset_constant(double value) {
  ScalarFunc f;
  f.kind = ScalarFunc::Kind::Constant;
  f.c0 = value;
  return f;
}

ScalarFunc preset_linear(double slope) {
  ScalarFunc f;
  f.kind = ScalarFunc::Kind::Linear;
  f.c0 = slope;
  return f;
}

ScalarFunc preset_logistic_f(double rho0, double K) {
  ScalarFunc f;
  f.kind = ScalarFunc::Kind::Logistic;
  f.c0 = rho0;
  f.c1 = K;
  return f;
}

ScalarFunc preset_linear_f(double rho0) { return preset_linear(rho0); }

ScalarFunc preset_saturating(double h0) {
  ScalarFunc f;
  f.kind = ScalarFunc::Kind::Saturating;
  f.c0 = h0;
  return f;
}

ScalarFunc preset_saturating_rho(double rho0) { return preset_saturating(rho0); }

ScalarFunc preset_constant_rho(double rho0) { return preset_constant(rho0); }

ScalarFunc preset_ramp_g(double g0, double tau) {
  ScalarFunc f;
  f.kind = ScalarFunc::Kind::Ramp;
  f.c0 = g0;
  f.c1 = tau;
  return f;
}

ScalarFunc preset_table(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error("table preset needs matching xs/ys with at least two points");
  }
  for (size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw Error("table abscissae must be strictly increasing");
  }
  ScalarFunc f;
  f.kind = ScalarFunc::Kind::Table;
  f.xs = std::move(xs);
  f.ys = std::move(ys);
  return f;
}

Field FieldInit::build(const MeshPtr& mesh) const {
  switch (kind) {
    case Kind::Constant:
      return Field::from(mesh, [&](double) { return value; });
    case Kind::Gaussian:
      return Field::from(mesh, [&](double x) {
        const double z = (x - center) / width;
        return offset + amplitude * std::exp(-0.5 * z * z);
      });
    case Kind::CosineMode:
      return Field::from(mesh, [&](double x) {
        return mean + amplitude * std::cos(mode * M_PI * x);
      });
    case Kind::Table: {
      if (static_cast<int>(table.size()) != mesh->n_cells()) {
        throw Error("table initial data must provide one value per cell");
      }
      return Field(mesh, table);
    }
  }
  return Field(mesh);
}

FieldInit init_constant(double value) {
  FieldInit f;
  f.kind = FieldInit::Kind::Constant;
  f.value = value;
  return f;
}

FieldInit init_gaussian(double center, double width, double amplitude, double offset) {
  FieldInit f;
  f.kind = FieldInit::Kind::Gaussian;
  f.center = center;
  f.width = width;
  f.amplitude = amplitude;
  f.offset = offset;
  return f;
}

FieldInit init_cosine_mode(double mean, double amplitude, int mode) {
  FieldInit f;
  f.kind = FieldInit::Kind::CosineMode;
  f.mean = mean;
  f.amplitude = amplitude;
  f.mode = mode;
  return f;
}

FieldInit init_table(std::vector<double> values) {
  FieldInit f;
  f.kind = FieldInit::Kind::Table;
  f.table = std::move(values);
  return f;
}

void InitialData::build(const MeshPtr& mesh, Field& u_out, Field& v_out, Field& a_out,
                        Field& b_out) const {
  u_out = u.build(mesh);
  v_out = v.build(mesh);
  a_out = a.build(mesh);
  b_out = b.build(mesh);
}

namespace {

void check_finite(double y, const std::string& slot, double x) {
  if (!std::isfinite(y)) {
    throw NonFiniteSampleError(slot + " returned a non-finite value at sample " +
                               std::to_string(x));
  }
}

}  // namespace

ValidationReport validate(const Parameters& p, const ModelFunctions& funcs, int sample_count,
                          bool waive_figure1) {
  ValidationReport report;
  auto flag = [&](const std::string& assumption, const std::string& where, double sample,
                  double value, const std::string& message, bool waivable = false) {
    Violation v;
    v.assumption = assumption;
    v.where = where;
    v.sample = sample;
    v.value = value;
    v.message = message;
    v.waived = waivable && waive_figure1;
    report.violations.push_back(std::move(v));
  };

  const std::pair<const char*, double> positives[] = {
      {"d1", p.d1},     {"d2", p.d2},     {"d3", p.d3},         {"d4", p.d4},
      {"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"beta1", p.beta1}, {"beta2", p.beta2},
      {"mu", p.mu},     {"mu_a", p.mu_a}, {"mu_b", p.mu_b},     {"k_capacity", p.k_capacity}};
  for (const auto& [name, value] : positives) {
    if (!std::isfinite(value)) throw NonFiniteSampleError(std::string(name) + " is not finite");
    if (value <= 0.0) {
      flag("(1) positive constants", name, 0.0, value, std::string(name) + " must be > 0");
    }
  }

  const int m = std::max(sample_count, 8);

  // (2) rho >= 0 and bounded.
  if (!funcs.rho.sup_abs().has_value()) {
    flag("(2) rho bounded", "rho", 0.0, 0.0, "rho preset is unbounded");
  }
  for (int i = 0; i <= m; ++i) {
    const double b = 100.0 * i / m;
    const double y = funcs.rho(b);
    check_finite(y, "rho", b);
    if (y < 0.0) flag("(2) rho nonnegative", "rho", b, y, "rho(b) < 0");
  }

  // (3) kinetic sign pattern around the carrying capacity.
  if (p.k_capacity > 0.0) {
    for (int i = 0; i <= m; ++i) {
      const double v = 10.0 * p.k_capacity * i / m;
      const double y = funcs.f(v);
      check_finite(y, "f", v);
      if (v < p.k_capacity && y < 0.0) {
        flag("(3) kinetic sign", "f", v, y, "f(v) < 0 below the capacity", true);
      }
      if (v >= p.k_capacity && y > 0.0) {
        flag("(3) kinetic sign", "f", v, y, "f(v) > 0 at or above the capacity", true);
      }
    }
  }

  // (4) h: h(0) = 0, nonnegative, bounded.
  {
    const double h0 = funcs.h(0.0);
    check_finite(h0, "h", 0.0);
    if (h0 != 0.0) flag("(4) h(0) = 0", "h", 0.0, h0, "h(0) must vanish");
    if (!funcs.h.sup_abs().has_value()) {
      flag("(4) h bounded", "h", 0.0, 0.0, "h preset is unbounded", true);
    }
    for (int i = 0; i <= m; ++i) {
      const double b = 100.0 * i / m;
      const double y = funcs.h(b);
      check_finite(y, "h", b);
      if (y < 0.0) flag("(4) h nonnegative", "h", b, y, "h(b) < 0");
    }
  }

  // (5) g: g(0) = 0, nonnegative.
  {
    const double g0 = funcs.g(0.0);
    check_finite(g0, "g", 0.0);
    if (g0 != 0.0) flag("(5) g(0) = 0", "g", 0.0, g0, "g(0) must vanish");
    for (int i = 0; i <= m; ++i) {
      const double t = 100.0 * i / m;
      const double y = funcs.g(t);
      check_finite(y, "g", t);
      if (y < 0.0) flag("(5) g nonnegative", "g", t, y, "g(t) < 0");
    }
  }

  return report;
}

Figure1Preset figure1_preset() {
  Figure1Preset fig;
  fig.params.d1 = 0.1;
  fig.params.d2 = 0.1;
  fig.params.d3 = 1.0;
  fig.params.d4 = 7.0;
  fig.params.alpha1 = 10.0;
  fig.params.alpha2 = 10.0;
  fig.params.beta1 = 1.0;
  fig.params.beta2 = 10.0;
  fig.params.mu = 0.001;
  fig.params.mu_a = 1.0;
  fig.params.mu_b = 1.0;
  fig.params.k_capacity = 1.0;

  fig.funcs.rho = preset_constant_rho(1.0);
  fig.funcs.f = preset_linear_f(0.001);  // linearized kinetics, no capacity
  fig.funcs.h = preset_linear(1.0);      // linearized boundary influx h(b) = b
  // The influx strength decides which wall the aggregation locks onto: a weak
  // ramp (g0 near 1) lets the v influx at x=0 win and everything collapses
  // left, while g0 = 2 reliably selects the x=1 attractor at n = 100..200.
  fig.funcs.g = preset_ramp_g(2.0, 1.0);

  fig.initial.u = init_constant(0.1);
  fig.initial.v = init_constant(0.1);
  fig.initial.a = init_constant(0.0);
  fig.initial.b = init_constant(0.0);
  return fig;
}

}  // namespace chemoflux
