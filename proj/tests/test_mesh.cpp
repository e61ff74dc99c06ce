#include <cmath>

#include "doctest.h"

#include "chemoflux/mesh.hpp"

using namespace chemoflux;

TEST_SUITE("mesh") {

TEST_CASE("construction and geometry") {
  const MeshPtr m = build_mesh(8);
  CHECK(m->n_cells() == 8);
  CHECK(m->dx() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(m->cell_center(0) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(m->cell_center(7) == doctest::Approx(0.9375).epsilon(1e-15));
  CHECK(m->cell_centers().size() == 8);
}

TEST_CASE("rejects meshes below four cells") {
  CHECK_THROWS_AS(build_mesh(3), InvalidMeshError);
  CHECK_THROWS_AS(build_mesh(0), InvalidMeshError);
  CHECK_THROWS_AS(build_mesh(-5), InvalidMeshError);
  CHECK_NOTHROW(build_mesh(4));
}

TEST_CASE("field construction and sampling") {
  const MeshPtr m = build_mesh(10);
  Field f = Field::from(m, [](double x) { return 2.0 * x; });
  CHECK(f.size() == 10);
  CHECK(f[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(f[9] == doctest::Approx(1.9).epsilon(1e-15));

  CHECK_THROWS_AS(Field(m, std::vector<double>(7, 0.0)), MeshMismatchError);

  const MeshPtr other = build_mesh(12);
  Field g(other);
  CHECK_THROWS_AS(require_same_mesh(f, g), MeshMismatchError);
}

TEST_CASE("midpoint quadrature basics") {
  const MeshPtr m = build_mesh(10);
  // constants and linears are integrated exactly by the midpoint rule
  CHECK(integrate(Field::from(m, [](double) { return 1.0; })) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(integrate(Field::from(m, [](double x) { return x; })) == doctest::Approx(0.5).epsilon(1e-14));

  // x^2 at n=10: sum((i+0.5)^2)/1000 = 332.5/1000
  CHECK(integrate(Field::from(m, [](double x) { return x * x; })) ==
        doctest::Approx(0.3325).epsilon(1e-15));
}

TEST_CASE("quadrature is second order") {
  const double exact = 2.0 / std::acos(-1.0);
  auto err = [&](int n) {
    Field f = Field::from(build_mesh(n), [](double x) { return std::sin(std::acos(-1.0) * x); });
    return std::abs(integrate(f) - exact);
  };
  const double ratio1 = err(16) / err(32);
  const double ratio2 = err(32) / err(64);
  CHECK(ratio1 > 3.6);
  CHECK(ratio1 < 4.4);
  CHECK(ratio2 > 3.8);
  CHECK(ratio2 < 4.2);
}

TEST_CASE("norms") {
  const MeshPtr m = build_mesh(16);
  Field c = Field::from(m, [](double) { return -3.0; });
  CHECK(l1_norm(c) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(l2_norm(c) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(h1_seminorm(c) == doctest::Approx(0.0));

  // f = x has unit gradient at every interior face
  Field lin = Field::from(m, [](double x) { return x; });
  const double expected = std::sqrt(m->dx() * (m->n_cells() - 1));
  CHECK(h1_seminorm(lin) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("face gradient") {
  const MeshPtr m = build_mesh(8);
  Field lin = Field::from(m, [](double x) { return 3.0 * x + 1.0; });
  FaceField grad = face_gradient(lin);
  CHECK(grad.size() == 9);
  CHECK(grad[0] == 0.0);  // boundary faces carry no gradient
  CHECK(grad[8] == 0.0);
  for (int j = 1; j < 8; ++j) CHECK(grad[j] == doctest::Approx(3.0).epsilon(1e-12));
}

}  // TEST_SUITE
