#include "chemoflux/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace chemoflux {

namespace {

double simpson_rule(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_rule(f, a, fa, m, fm, lm, flm);
  const double right = simpson_rule(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson_rule(f, a, fa, b, fb, m, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double expm1_over(double eps, double t) {
  if (eps == 0.0) return t;
  return std::expm1(eps * t) / eps;
}

double TimeSeries::interp(double ti) const {
  if (t.empty()) throw Error("TimeSeries::interp on an empty series");
  if (ti <= t.front()) return value.front();
  if (ti >= t.back()) return value.back();
  auto it = std::upper_bound(t.begin(), t.end(), ti);
  const auto i = static_cast<size_t>(it - t.begin());
  const double w = (ti - t[i - 1]) / (t[i] - t[i - 1]);
  return value[i - 1] + w * (value[i] - value[i - 1]);
}

namespace {

// (1 - e^{-mu t})/mu, continuous through mu = 0.
// (1 - e^{-mu t}) / mu == (e^{-mu t} - 1) / (-mu), smooth through mu = 0.
double one_minus_exp_over(double mu, double t) { return expm1_over(-mu, t); }

// int_0^t e^{-mu(t-s)} g(s) ds for the preset forms with closed antiderivatives.
bool influx_convolution_closed(const ScalarFunc& g, double mu, double t, double& out) {
  switch (g.kind) {
    case ScalarFunc::Kind::Zero:
      out = 0.0;
      return true;
    case ScalarFunc::Kind::Constant:
      out = g.c0 * one_minus_exp_over(mu, t);
      return true;
    case ScalarFunc::Kind::Ramp:
      out = g.c0 * (one_minus_exp_over(mu, t) -
                    std::exp(-mu * t) * expm1_over(mu - 1.0 / g.c1, t));
      return true;
    default:
      return false;
  }
}

}  // namespace

double ubar_exact(double t, const AverageDynamics& dyn) {
  const double mu = dyn.params.mu;
  double conv = 0.0;
  if (!influx_convolution_closed(dyn.g, mu, t, conv)) {
    conv = adaptive_simpson([&](double s) { return std::exp(-mu * (t - s)) * dyn.g(s); }, 0.0, t);
  }
  return dyn.ubar0 * std::exp(-mu * t) + dyn.params.d1 * conv;
}

double bbar_exact(double t, const AverageDynamics& dyn) {
  const double mu = dyn.params.mu, mu_b = dyn.params.mu_b;
  if (dyn.g.kind == ScalarFunc::Kind::Zero) {
    // ubar is a pure exponential; the convolution collapses.
    return dyn.bbar0 * std::exp(-mu_b * t) +
           dyn.params.beta2 * dyn.ubar0 * std::exp(-mu_b * t) * expm1_over(mu_b - mu, t);
  }
  const double conv = adaptive_simpson(
      [&](double s) { return std::exp(-mu_b * (t - s)) * ubar_exact(s, dyn); }, 0.0, t);
  return dyn.bbar0 * std::exp(-mu_b * t) + dyn.params.beta2 * conv;
}

double abar_exact(double t, const AverageDynamics& dyn, const TimeSeries& vbar_trace) {
  const double mu_a = dyn.params.mu_a;
  const double conv = adaptive_simpson(
      [&](double s) { return std::exp(-mu_a * (t - s)) * vbar_trace.interp(s); }, 0.0, t);
  return dyn.abar0 * std::exp(-mu_a * t) + dyn.params.beta1 * conv;
}

AverageDifference average_difference_decay(double t, double du0, double db0,
                                           const Parameters& p) {
  AverageDifference d;
  d.du = du0 * std::exp(-p.mu * t);
  // e^{-mu_b t}[db0 + beta2 du0 E] with E = (e^{(mu_b-mu)t}-1)/(mu_b-mu);
  // the expm1 form passes smoothly through mu = mu_b where E -> t.
  d.db = std::exp(-p.mu_b * t) * (db0 + p.beta2 * du0 * expm1_over(p.mu_b - p.mu, t));
  return d;
}

ResidualTrace vbar_residual(const std::vector<State>& snaps, const Parameters& p,
                            const ModelFunctions& funcs) {
  if (snaps.size() < 3) {
    throw Error("vbar_residual needs at least 3 snapshots for central differences");
  }
  ResidualTrace trace;
  for (size_t k = 1; k + 1 < snaps.size(); ++k) {
    const double dt2 = snaps[k + 1].t - snaps[k - 1].t;
    if (!(dt2 > 0.0)) throw Error("vbar_residual: snapshot times must increase");
    const double dvbar = (integrate(snaps[k + 1].v) - integrate(snaps[k - 1].v)) / dt2;

    const State& s = snaps[k];
    Field reaction(s.v.mesh);
    for (int i = 0; i < s.v.size(); ++i) reaction[i] = funcs.rho(s.b[i]) * funcs.f(s.v[i]);
    const double rhs = p.d2 * funcs.h(s.b[0]) + integrate(reaction);

    trace.t.push_back(s.t);
    trace.value.push_back(dvbar - rhs);
    trace.max_abs = std::max(trace.max_abs, std::abs(dvbar - rhs));
  }
  return trace;
}

GrowthBounds vbar_abar_growth_bounds(double t, const AverageDynamics& dyn,
                                     const ModelFunctions& funcs) {
  const auto h_sup = funcs.h.sup_nonneg();
  const auto rho_sup = funcs.rho.sup_nonneg();
  const auto f_sup = funcs.f.sup_abs();
  if (!h_sup) throw Error("growth bound unavailable: h preset is unbounded");
  if (!rho_sup) throw Error("growth bound unavailable: rho preset is unbounded");
  if (!f_sup) throw Error("growth bound unavailable: f preset is unbounded");
  const double rate = dyn.params.d2 * *h_sup + *rho_sup * *f_sup;
  GrowthBounds gb;
  gb.vbar_bound = dyn.vbar0 + rate * t;
  gb.abar_bound = dyn.abar0 + 0.5 * rate * t * t;
  return gb;
}

double greens_function_neumann(double x, double s, double eta) {
  if (!(eta > 0.0)) throw Error("greens_function_neumann: eta must be > 0");
  const double lo = std::min(x, s), hi = std::max(x, s);
  return std::cosh(eta * lo) * std::cosh(eta * (1.0 - hi)) / (eta * std::sinh(eta));
}

double greens_function_neumann_variant(double x, double s, double eta) {
  if (!(eta > 0.0)) throw Error("greens_function_neumann_variant: eta must be > 0");
  const double outer = std::max(x, s), inner = std::min(x, s);
  const double sh = std::sinh(eta * outer);
  const double numer = std::cosh(eta * outer) - std::tanh(eta) * sh;
  const double denom = eta * std::tanh(eta) * (sh * sh - sh + 1.0);
  return numer / denom * std::cosh(eta * inner);
}

std::vector<double> greens_solve(const std::function<double(double)>& source, double eta,
                                 double scale, std::span<const double> eval_points) {
  std::vector<double> out;
  out.reserve(eval_points.size());
  for (double x : eval_points) {
    auto integrand = [&](double s) { return greens_function_neumann(x, s, eta) * source(s); };
    // G has a derivative kink at s = x; integrate the two smooth pieces apart.
    const double left = adaptive_simpson(integrand, 0.0, x);
    const double right = adaptive_simpson(integrand, x, 1.0);
    out.push_back(scale * (left + right));
  }
  return out;
}

ScaledParameters scale_system(const Parameters& p, double U, double V, double A, double B,
                              double L) {
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); };
  if (!close(p.d3, p.d4)) throw Error("scale_system requires d3 = d4");
  if (!close(p.d1, p.d2)) throw Error("scale_system requires d1 = d2");
  for (double s : {U, V, A, B, L}) {
    if (!(s > 0.0)) throw Error("scale_system: field and length scales must be > 0");
  }
  ScaledParameters sp;
  sp.t_scale = L * L / p.d3;
  sp.k = p.d1 / p.d3;
  sp.delta = p.alpha1 * A / (sp.k * p.d3);
  sp.gamma = p.alpha2 * B / (sp.k * p.d3);
  sp.g1 = p.beta1 * sp.t_scale * V / A;
  sp.g2 = p.beta2 * sp.t_scale * U / B;
  sp.mu_a = p.mu_a * sp.t_scale;
  sp.mu_b = p.mu_b * sp.t_scale;
  return sp;
}

namespace {

// log(cosh(z)) without overflow for large |z|.
double log_cosh(double z) {
  const double az = std::abs(z);
  return az + std::log1p(std::exp(-2.0 * az)) - M_LN2;
}

double cosh_sq(double z) {
  const double c = std::cosh(z);
  return c * c;
}

}  // namespace

double steady_b(const SteadyProfileParams& sp, double x) {
  return 2.0 / sp.gamma * log_cosh(sp.gamma * std::sqrt(0.5 * sp.p) * (x + sp.x0));
}

double steady_a(const SteadyProfileParams& sp, double x) {
  return 2.0 / sp.delta * log_cosh(sp.delta * std::sqrt(0.5 * sp.k1) * (x + sp.x0));
}

double steady_u0(const SteadyProfileParams& sp, double x) {
  return sp.c * cosh_sq(sp.delta * std::sqrt(0.5 * sp.k1) * (x + sp.x0));
}

double steady_v0(const SteadyProfileParams& sp, double x) {
  // The exponential relation v0 = D e^{Gamma b} fixes the argument to the
  // same sqrt(P/2) rate as b itself.
  return sp.d * cosh_sq(sp.gamma * std::sqrt(0.5 * sp.p) * (x + sp.x0));
}

State steady_order0(const SteadyProfileParams& sp, const MeshPtr& mesh) {
  State s(mesh);
  s.t = 0.0;
  s.u = Field::from(mesh, [&](double x) { return steady_u0(sp, x); });
  s.v = Field::from(mesh, [&](double x) { return steady_v0(sp, x); });
  s.a = Field::from(mesh, [&](double x) { return steady_a(sp, x); });
  s.b = Field::from(mesh, [&](double x) { return steady_b(sp, x); });
  return s;
}

double SteadyResidualReport::max_residual() const {
  return std::max({ode_b, ode_a, first_integral_b, exp_u, exp_v});
}

SteadyResidualReport steady_residuals(const SteadyProfileParams& sp, int grid_points) {
  if (grid_points < 10) throw Error("steady_residuals: need at least 10 grid points");
  SteadyResidualReport rep;
  const double grid_h = 1.0 / (grid_points - 1);
  // Stencil spacing is chosen to balance O(h^4) truncation against the
  // eps/h^2 roundoff of the second-difference quotient; tying it to the
  // evaluation grid would drown the residual in roundoff at fine grids.
  const double h = 3e-3;
  for (int i = 0; i < grid_points; ++i) {
    const double x = i * grid_h;
    // 5-point stencils; the closed forms extend smoothly beyond [0,1].
    auto d1 = [&](auto&& fn) {
      return (fn(sp, x - 2 * h) - 8 * fn(sp, x - h) + 8 * fn(sp, x + h) - fn(sp, x + 2 * h)) /
             (12 * h);
    };
    auto d2 = [&](auto&& fn) {
      return (-fn(sp, x - 2 * h) + 16 * fn(sp, x - h) - 30 * fn(sp, x) + 16 * fn(sp, x + h) -
              fn(sp, x + 2 * h)) /
             (12 * h * h);
    };

    const double b = steady_b(sp, x), a = steady_a(sp, x);
    const double bpp = d2(steady_b), app = d2(steady_a), bp = d1(steady_b);

    rep.ode_b = std::max(rep.ode_b, std::abs(bpp - sp.gamma * sp.p * std::exp(-sp.gamma * b)));
    rep.ode_a = std::max(rep.ode_a, std::abs(app - sp.delta * sp.k1 * std::exp(-sp.delta * a)));
    rep.first_integral_b = std::max(
        rep.first_integral_b, std::abs(0.5 * bp * bp + sp.p * std::exp(-sp.gamma * b) - sp.p));
    rep.exp_u = std::max(rep.exp_u, std::abs(steady_u0(sp, x) - sp.c * std::exp(sp.delta * a)));
    rep.exp_v = std::max(rep.exp_v, std::abs(steady_v0(sp, x) - sp.d * std::exp(sp.gamma * b)));
  }
  return rep;
}

State steady_relax(const ScaledSystem& sys, double epsilon, double q, const State& initial,
                   const RelaxConfig& cfg) {
  // Map the scaled system onto the solver: unit diffusivities, chemotactic
  // coefficients Delta/Gamma, kinetics eps*rho*v, influx gradient q.
  Parameters p;
  p.d1 = p.d2 = p.d3 = p.d4 = 1.0;
  p.alpha1 = sys.delta;
  p.alpha2 = sys.gamma;
  p.beta1 = sys.g1;
  p.beta2 = sys.g2;
  p.mu = epsilon * sys.mu;
  p.mu_a = sys.mu_a;
  p.mu_b = sys.mu_b;

  ModelFunctions funcs;
  funcs.rho = preset_constant(epsilon * sys.rho);
  funcs.f = preset_linear(1.0);  // rho*f = eps*rho_tilde*v
  funcs.h = preset_zero();
  funcs.g = preset_constant(q);

  SolverConfig scfg;
  scfg.dt_max = cfg.dt_max;
  scfg.cfl_safety = cfg.cfl_safety;
  scfg.scheme = cfg.scheme;

  State s = initial;
  for (long k = 0; k < cfg.max_steps; ++k) {
    const double dt = cfl_dt(s, p, scfg);
    const State next = step(s, p, funcs, scfg, dt, nullptr, k);
    double rate = 0.0;
    for (int i = 0; i < s.u.size(); ++i) {
      rate = std::max(rate, std::abs(next.u[i] - s.u[i]));
      rate = std::max(rate, std::abs(next.v[i] - s.v[i]));
      rate = std::max(rate, std::abs(next.a[i] - s.a[i]));
      rate = std::max(rate, std::abs(next.b[i] - s.b[i]));
    }
    s = next;
    if (rate / dt <= cfg.tol) return s;
  }
  throw NoSteadyStateError("steady_relax: no steady state within the step budget");
}

}  // namespace chemoflux
