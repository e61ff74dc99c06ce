#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "chemoflux/errors.hpp"

namespace chemoflux {

/// Uniform cell-centered mesh on [0, 1].
///
/// Cell i covers [i*dx, (i+1)*dx] with center at (i + 1/2)*dx.  Faces are
/// indexed 0..n; face j separates cells j-1 and j, faces 0 and n are the
/// domain boundary.
class Mesh {
 public:
  explicit Mesh(int n_cells) : n_(n_cells) {
    if (n_cells < 4) {
      throw InvalidMeshError("mesh needs at least 4 cells, got " + std::to_string(n_cells));
    }
    dx_ = 1.0 / n_cells;
    centers_.resize(n_cells);
    for (int i = 0; i < n_cells; ++i) centers_[i] = (i + 0.5) * dx_;
  }

  int n_cells() const { return n_; }
  double dx() const { return dx_; }
  double cell_center(int i) const { return centers_[i]; }
  const std::vector<double>& cell_centers() const { return centers_; }

 private:
  int n_;
  double dx_;
  std::vector<double> centers_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

inline MeshPtr build_mesh(int n_cells) { return std::make_shared<const Mesh>(n_cells); }

/// One scalar unknown per cell (a cell-averaged density or concentration).
struct Field {
  MeshPtr mesh;
  std::vector<double> values;

  Field() = default;
  explicit Field(MeshPtr m) : mesh(std::move(m)), values(mesh->n_cells(), 0.0) {}
  Field(MeshPtr m, std::vector<double> v) : mesh(std::move(m)), values(std::move(v)) {
    if (static_cast<int>(values.size()) != mesh->n_cells()) {
      throw MeshMismatchError("field size does not match mesh cell count");
    }
  }

  /// Sample fn at every cell center.
  static Field from(const MeshPtr& m, const std::function<double(double)>& fn) {
    Field f(m);
    for (int i = 0; i < m->n_cells(); ++i) f.values[i] = fn(m->cell_center(i));
    return f;
  }

  double& operator[](int i) { return values[i]; }
  double operator[](int i) const { return values[i]; }
  int size() const { return static_cast<int>(values.size()); }
};

/// One value per face, values[0..n].  Boundary faces are 0 and n.
struct FaceField {
  MeshPtr mesh;
  std::vector<double> values;

  FaceField() = default;
  explicit FaceField(MeshPtr m) : mesh(std::move(m)), values(mesh->n_cells() + 1, 0.0) {}

  double& operator[](int j) { return values[j]; }
  double operator[](int j) const { return values[j]; }
  int size() const { return static_cast<int>(values.size()); }
};

void require_same_mesh(const Field& a, const Field& b);

/// Midpoint quadrature: dx * sum of cell values.
double integrate(const Field& f);

/// dx * sum |f_i|.
double l1_norm(const Field& f);

/// sqrt(dx * sum f_i^2).
double l2_norm(const Field& f);

/// Face-centered gradient.  Interior face j carries (f_j - f_{j-1})/dx;
/// boundary faces are set to zero (all boundary conditions here are flux-based).
FaceField face_gradient(const Field& f);

/// sqrt(dx * sum over interior faces of gradient^2).  Boundary faces excluded.
double h1_seminorm(const Field& f);

}  // namespace chemoflux
