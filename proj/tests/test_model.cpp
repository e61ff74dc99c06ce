#include <cmath>

#include "doctest.h"

#include "chemoflux/model.hpp"

using namespace chemoflux;

TEST_SUITE("model") {

TEST_CASE("default parameters match the benchmark set") {
  const Parameters p;
  CHECK(p.d1 == 0.1);
  CHECK(p.d2 == 0.1);
  CHECK(p.d3 == 1.0);
  CHECK(p.d4 == 7.0);
  CHECK(p.alpha1 == 10.0);
  CHECK(p.alpha2 == 10.0);
  CHECK(p.beta1 == 1.0);
  CHECK(p.beta2 == 10.0);
  CHECK(p.mu == 0.001);
  CHECK(p.mu_a == 1.0);
  CHECK(p.mu_b == 1.0);
  CHECK(p.k_capacity == 1.0);
}

TEST_CASE("scalar function presets evaluate correctly") {
  CHECK(preset_zero()(3.7) == 0.0);
  CHECK(preset_constant(2.5)(-1.0) == 2.5);
  CHECK(preset_linear(0.5)(4.0) == doctest::Approx(2.0));

  const ScalarFunc f = preset_logistic_f(2.0, 4.0);  // 2 v (1 - v/4)
  CHECK(f(0.0) == 0.0);
  CHECK(f(4.0) == doctest::Approx(0.0));
  CHECK(f(2.0) == doctest::Approx(2.0));  // peak 2*K/4 at v = K/2
  CHECK(f(6.0) < 0.0);                    // decline above capacity

  const ScalarFunc h = preset_saturating(3.0);  // 3 b / (1 + b)
  CHECK(h(0.0) == 0.0);
  CHECK(h(1.0) == doctest::Approx(1.5));
  CHECK(h(1e9) == doctest::Approx(3.0).epsilon(1e-6));

  const ScalarFunc g = preset_ramp_g(2.0, 0.5);
  CHECK(g(0.0) == 0.0);
  CHECK(g(0.5) == doctest::Approx(2.0 * (1.0 - std::exp(-1.0))));
  CHECK(g(100.0) == doctest::Approx(2.0));

  const ScalarFunc lin_f = preset_linear_f(0.001);
  CHECK(lin_f(2.0) == doctest::Approx(0.002));
}

TEST_CASE("table preset interpolates and clamps") {
  const ScalarFunc t = preset_table({0.0, 1.0, 2.0}, {0.0, 2.0, 1.0});
  CHECK(t(0.5) == doctest::Approx(1.0));
  CHECK(t(1.5) == doctest::Approx(1.5));
  CHECK(t(-3.0) == doctest::Approx(0.0));  // clamped
  CHECK(t(9.0) == doctest::Approx(1.0));   // clamped

  CHECK_THROWS_AS(preset_table({1.0, 1.0}, {0.0, 0.0}), Error);  // not strictly increasing
  CHECK_THROWS_AS(preset_table({0.0}, {1.0}), Error);            // too short
  CHECK_THROWS_AS(preset_table({0.0, 1.0}, {1.0}), Error);       // length mismatch
}

TEST_CASE("analytic sups") {
  CHECK(preset_logistic_f(2.0, 4.0).sup_nonneg().value() == doctest::Approx(2.0));  // rho0 K/4
  CHECK(preset_saturating(3.0).sup_nonneg().value() == doctest::Approx(3.0));
  CHECK(preset_ramp_g(1.5, 1.0).sup_nonneg().value() == doctest::Approx(1.5));
  CHECK(preset_constant(0.7).sup_nonneg().value() == doctest::Approx(0.7));
  CHECK_FALSE(preset_linear(1.0).sup_abs().has_value());
  CHECK_FALSE(preset_linear(1.0).bounded());
  CHECK(preset_zero().bounded());
}

TEST_CASE("field initialisers") {
  const MeshPtr m = build_mesh(10);

  Field c = init_constant(0.3).build(m);
  for (int i = 0; i < 10; ++i) CHECK(c[i] == 0.3);

  Field cosf = init_cosine_mode(1.0, 0.5, 2).build(m);
  for (int i = 0; i < 10; ++i) {
    const double x = m->cell_center(i);
    CHECK(cosf[i] == doctest::Approx(1.0 + 0.5 * std::cos(2 * std::acos(-1.0) * x)));
  }

  Field gau = init_gaussian(0.5, 0.1, 2.0, 0.25).build(m);
  CHECK(gau[5] > gau[0]);
  CHECK(gau[0] >= 0.25);  // offset floor

  Field tab = init_table({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}).build(m);
  CHECK(tab[7] == 7.0);
  CHECK_THROWS_AS(init_table({1.0, 2.0}).build(m), Error);  // length != n_cells

  // InitialData builds all four fields on the same mesh
  InitialData init;
  init.u = init_constant(0.1);
  init.b = init_cosine_mode(0.5, 0.1, 1);
  Field u(m), v(m), a(m), b(m);
  init.build(m, u, v, a, b);
  CHECK(u[3] == 0.1);
  CHECK(v[3] == 0.0);
  CHECK(b[0] > b[9]);  // cos(pi x) decreasing
}

TEST_CASE("validate accepts clean configurations") {
  Parameters p;
  ModelFunctions funcs;
  funcs.rho = preset_constant(1.0);
  funcs.f = preset_logistic_f(0.5, p.k_capacity);
  funcs.h = preset_saturating(0.5);
  funcs.g = preset_ramp_g(1.0, 1.0);
  const ValidationReport rep = validate(p, funcs);
  CHECK(rep.passed());
  CHECK(rep.violations.empty());
}

TEST_CASE("validate flags nonpositive constants") {
  Parameters p;
  p.d1 = -1.0;
  const ValidationReport rep = validate(p, ModelFunctions{});
  CHECK_FALSE(rep.passed());
  bool found = false;
  for (const auto& v : rep.violations) {
    if (v.where == "d1") found = true;
  }
  CHECK(found);
}

TEST_CASE("validate flags structural violations") {
  Parameters p;
  ModelFunctions funcs;

  SUBCASE("negative rho") {
    funcs.rho = preset_constant(-0.5);
    CHECK_FALSE(validate(p, funcs).passed());
  }
  SUBCASE("h(0) != 0") {
    funcs.h = preset_table({0.0, 1.0}, {0.5, 1.0});
    CHECK_FALSE(validate(p, funcs).passed());
  }
  SUBCASE("negative influx gradient") {
    funcs.g = preset_constant(-1.0);
    CHECK_FALSE(validate(p, funcs).passed());
  }
  SUBCASE("kinetics with wrong sign pattern") {
    funcs.f = preset_constant(1.0);  // f(0) != 0: no zero at origin
    CHECK_FALSE(validate(p, funcs).passed());
  }
}

TEST_CASE("figure-1 preset carries its documented waivers") {
  const Figure1Preset fig = figure1_preset();

  // without the waiver the linear kinetics/boundary slots are flagged
  const ValidationReport strict = validate(fig.params, fig.funcs);
  CHECK_FALSE(strict.passed());

  // with the waiver everything else still has to pass
  const ValidationReport waived = validate(fig.params, fig.funcs, 256, true);
  CHECK(waived.passed());
  bool any_waived = false;
  for (const auto& v : waived.violations) any_waived |= v.waived;
  CHECK(any_waived);
}

TEST_CASE("figure-1 preset values") {
  const Figure1Preset fig = figure1_preset();
  CHECK(fig.params.d1 == 0.1);
  CHECK(fig.params.d4 == 7.0);
  CHECK(fig.params.mu == 0.001);
  CHECK(fig.params.beta2 == 10.0);
  CHECK(fig.funcs.g.kind == ScalarFunc::Kind::Ramp);
  CHECK(fig.funcs.g(0.0) == 0.0);
  CHECK(fig.funcs.h(2.0) == doctest::Approx(2.0));      // h(b) = b
  CHECK(fig.funcs.f(3.0) == doctest::Approx(0.003));    // f(v) = 0.001 v
  CHECK(fig.funcs.rho(5.0) == doctest::Approx(1.0));

  const MeshPtr m = build_mesh(6);
  Field u(m), v(m), a(m), b(m);
  fig.initial.build(m, u, v, a, b);
  for (int i = 0; i < 6; ++i) {
    CHECK(u[i] == 0.1);
    CHECK(v[i] == 0.1);
    CHECK(a[i] == 0.0);
    CHECK(b[i] == 0.0);
  }
}

}  // TEST_SUITE
