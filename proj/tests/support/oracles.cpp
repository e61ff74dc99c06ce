#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

std::vector<double> dense_tridiagonal_solve(const std::vector<double>& lower,
                                            const std::vector<double>& diag,
                                            const std::vector<double>& upper,
                                            const std::vector<double>& rhs) {
  const int n = static_cast<int>(diag.size());
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
  for (int i = 0; i < n; ++i) {
    m[i][i] = diag[i];
    if (i > 0) m[i][i - 1] = lower[i];
    if (i + 1 < n) m[i][i + 1] = upper[i];
    m[i][n] = rhs[i];
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-300) throw std::runtime_error("oracle: singular matrix");
    std::swap(m[col], m[pivot]);
    for (int r = col + 1; r < n; ++r) {
      const double factor = m[r][col] / m[col][col];
      for (int c = col; c <= n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double acc = m[i][n];
    for (int c = i + 1; c < n; ++c) acc -= m[i][c] * x[c];
    x[i] = acc / m[i][i];
  }
  return x;
}

std::vector<double> banded_tridiagonal_solve(std::vector<double> lower, std::vector<double> diag,
                                             std::vector<double> upper, std::vector<double> rhs) {
  // LU with partial pivoting on a tridiagonal matrix produces one extra
  // superdiagonal (fill-in).  Row i holds (diag[i], upper[i], extra[i]).
  const int n = static_cast<int>(diag.size());
  std::vector<double> extra(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(lower[i + 1]) > std::abs(diag[i])) {
      std::swap(diag[i], lower[i + 1]);
      std::swap(upper[i], diag[i + 1]);
      std::swap(extra[i], upper[i + 1]);
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (std::abs(diag[i]) < 1e-300) throw std::runtime_error("oracle: singular matrix");
    const double factor = lower[i + 1] / diag[i];
    diag[i + 1] -= factor * upper[i];
    upper[i + 1] -= factor * extra[i];
    rhs[i + 1] -= factor * rhs[i];
  }
  if (std::abs(diag[n - 1]) < 1e-300) throw std::runtime_error("oracle: singular matrix");
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double acc = rhs[i];
    if (i + 1 < n) acc -= upper[i] * x[i + 1];
    if (i + 2 < n) acc -= extra[i] * x[i + 2];
    x[i] = acc / diag[i];
  }
  return x;
}

std::vector<double> rk4(
    const std::function<std::vector<double>(double, const std::vector<double>&)>& f,
    std::vector<double> y, double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  const int n = static_cast<int>(y.size());
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    const std::vector<double> k1 = f(t, y);
    std::vector<double> tmp(n);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const std::vector<double> k2 = f(t + 0.5 * h, tmp);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const std::vector<double> k3 = f(t + 0.5 * h, tmp);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    const std::vector<double> k4 = f(t + h, tmp);
    for (int i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return y;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  // 5-point nodes/weights on [-1, 1]
  static const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double ws[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                               0.4786286704993665, 0.2369268850561891};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int q = 0; q < 5; ++q) total += ws[q] * f(mid + 0.5 * h * xs[q]);
  }
  return total * 0.5 * h;
}

std::vector<double> neumann_bvp_solve(const std::function<double(double)>& source, double eta,
                                      int n) {
  // ghost-cell closure a_{-1} = a_0, a_n = a_{n-1} encodes a' = 0 at walls
  const double dx = 1.0 / n;
  std::vector<double> lower(n, -1.0 / (dx * dx)), upper(n, -1.0 / (dx * dx));
  std::vector<double> diag(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    const double neighbors = (i > 0 ? 1.0 : 0.0) + (i + 1 < n ? 1.0 : 0.0);
    diag[i] = neighbors / (dx * dx) + eta * eta;
    rhs[i] = source((i + 0.5) * dx);
  }
  lower[0] = 0.0;
  upper[n - 1] = 0.0;
  return banded_tridiagonal_solve(lower, diag, upper, rhs);
}

uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
}

}  // namespace oracle
