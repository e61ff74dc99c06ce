#include "chemoflux/mesh.hpp"

#include <cmath>

namespace chemoflux {

void require_same_mesh(const Field& a, const Field& b) {
  if (!a.mesh || !b.mesh || a.mesh->n_cells() != b.mesh->n_cells()) {
    throw MeshMismatchError("fields live on different meshes");
  }
}

double integrate(const Field& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s * f.mesh->dx();
}

double l1_norm(const Field& f) {
  double s = 0.0;
  for (double v : f.values) s += std::abs(v);
  return s * f.mesh->dx();
}

double l2_norm(const Field& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(s * f.mesh->dx());
}

FaceField face_gradient(const Field& f) {
  FaceField g(f.mesh);
  const double inv_dx = 1.0 / f.mesh->dx();
  const int n = f.size();
  for (int j = 1; j < n; ++j) g[j] = (f[j] - f[j - 1]) * inv_dx;
  // g[0] and g[n] stay 0: boundary fluxes enter the schemes as explicit sources.
  return g;
}

double h1_seminorm(const Field& f) {
  const FaceField g = face_gradient(f);
  double s = 0.0;
  for (int j = 1; j < f.size(); ++j) s += g[j] * g[j];
  return std::sqrt(s * f.mesh->dx());
}

}  // namespace chemoflux
