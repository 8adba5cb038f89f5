#include "mesh_basis.hpp"

#include "numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace dgmc {

Discretization build_discretization(int n_elements, int degree, IntegrationMode mode,
                                    double x_left, double x_right) {
  if (degree < 1 || degree > 6) {
    throw UnsupportedDegree("polynomial degree must be in [1, 6], got " + std::to_string(degree));
  }
  if (n_elements < 2) throw std::invalid_argument("need at least 2 elements");
  if (!(x_right > x_left)) throw std::invalid_argument("empty domain");

  Discretization disc;
  disc.mesh.n_elements = n_elements;
  disc.mesh.x_left = x_left;
  disc.mesh.x_right = x_right;

  const int n_b = degree + 1;
  std::vector<double> lobatto_w;
  gauss_lobatto(n_b, disc.basis.nodes, lobatto_w);
  disc.basis.degree = degree;

  Operators& ops = disc.ops;
  ops.mode = mode;
  ops.n_b = n_b;
  const double half_h = 0.5 * disc.mesh.h();

  std::vector<double> ref_w;
  if (mode == IntegrationMode::colocated) {
    ops.n_q = n_b;
    ops.quad_points = disc.basis.nodes;
    ref_w = lobatto_w;
  } else {
    ops.n_q = degree + 2;
    gauss_legendre(ops.n_q, ops.quad_points, ref_w);
  }
  const int n_q = ops.n_q;

  ops.quad_weights.resize(n_q);
  for (int q = 0; q < n_q; ++q) ops.quad_weights[q] = ref_w[q] * half_h;

  ops.quad_interp.assign(static_cast<std::size_t>(n_q) * n_b, 0.0);
  ops.quad_deriv.assign(static_cast<std::size_t>(n_q) * n_b, 0.0);
  std::vector<double> row(n_b);
  for (int q = 0; q < n_q; ++q) {
    lagrange_values(disc.basis.nodes, ops.quad_points[q], row);
    for (int j = 0; j < n_b; ++j) ops.quad_interp[q * n_b + j] = row[j];
    lagrange_derivatives(disc.basis.nodes, ops.quad_points[q], row);
    for (int j = 0; j < n_b; ++j) ops.quad_deriv[q * n_b + j] = row[j] / half_h;
  }

  ops.grad_flux.assign(static_cast<std::size_t>(n_b) * n_q, 0.0);
  for (int i = 0; i < n_b; ++i) {
    for (int q = 0; q < n_q; ++q) {
      // physical dphi/dx times physical weight: the h/2 factors cancel.
      ops.grad_flux[i * n_q + q] = ops.quad_deriv[q * n_b + i] * ops.quad_weights[q];
    }
  }

  ops.stiffness.assign(static_cast<std::size_t>(n_b) * n_b, 0.0);
  for (int i = 0; i < n_b; ++i) {
    for (int j = 0; j < n_b; ++j) {
      double s = 0.0;
      for (int q = 0; q < n_q; ++q) {
        s += ops.grad_flux[i * n_q + q] * ops.quad_interp[q * n_b + j];
      }
      ops.stiffness[i * n_b + j] = s;
    }
  }

  ops.mass.assign(static_cast<std::size_t>(n_b) * n_b, 0.0);
  if (mode == IntegrationMode::colocated) {
    ops.mass_diag.resize(n_b);
    for (int i = 0; i < n_b; ++i) {
      ops.mass_diag[i] = ops.quad_weights[i];
      ops.mass[i * n_b + i] = ops.quad_weights[i];
    }
  } else {
    for (int q = 0; q < n_q; ++q) {
      for (int i = 0; i < n_b; ++i) {
        const double wi = ops.quad_weights[q] * ops.quad_interp[q * n_b + i];
        for (int j = 0; j < n_b; ++j) {
          ops.mass[i * n_b + j] += wi * ops.quad_interp[q * n_b + j];
        }
      }
    }
  }
  ops.mass_chol = ops.mass;
  if (!cholesky_factor(ops.mass_chol, n_b)) {
    throw std::runtime_error("mass matrix is not positive definite");
  }
  return disc;
}

void l2_project(const Operators& ops, std::span<const double> values, int m,
                std::span<double> coeff) {
  const int n_b = ops.n_b;
  const int n_q = ops.n_q;
  if (ops.colocated()) {
    // Diagonal mass with V_q = I: the projection is the interpolant.
    for (int k = 0; k < n_b * m; ++k) coeff[k] = values[k];
    return;
  }
  // coeff = M^{-1} V_q^T W values, solved componentwise via the Cholesky factor.
  double rhs[7 * kMaxComponents] = {};
  for (int q = 0; q < n_q; ++q) {
    const double w = ops.quad_weights[q];
    for (int j = 0; j < n_b; ++j) {
      const double vw = w * ops.quad_interp[q * n_b + j];
      for (int c = 0; c < m; ++c) rhs[j * m + c] += vw * values[q * m + c];
    }
  }
  double x[7];
  for (int c = 0; c < m; ++c) {
    for (int j = 0; j < n_b; ++j) x[j] = rhs[j * m + c];
    cholesky_solve(ops.mass_chol, n_b, {x, static_cast<std::size_t>(n_b)});
    for (int j = 0; j < n_b; ++j) coeff[j * m + c] = x[j];
  }
}

void interpolate_to_quadrature(const Operators& ops, std::span<const double> coeff, int m,
                               std::span<double> values) {
  const int n_b = ops.n_b;
  const int n_q = ops.n_q;
  if (ops.colocated()) {
    for (int k = 0; k < n_q * m; ++k) values[k] = coeff[k];
    return;
  }
  for (int q = 0; q < n_q; ++q) {
    for (int c = 0; c < m; ++c) values[q * m + c] = 0.0;
    for (int j = 0; j < n_b; ++j) {
      const double v = ops.quad_interp[q * n_b + j];
      for (int c = 0; c < m; ++c) values[q * m + c] += v * coeff[j * m + c];
    }
  }
}

void coefficient_average(std::span<const double> coeff, int n_b, int m, std::span<double> avg) {
  for (int c = 0; c < m; ++c) avg[c] = 0.0;
  for (int k = 0; k < n_b; ++k) {
    for (int c = 0; c < m; ++c) avg[c] += coeff[k * m + c];
  }
  for (int c = 0; c < m; ++c) avg[c] /= n_b;
}

double integrate_global(const Discretization& disc, const std::vector<double>& pointwise_values) {
  const int n_q = disc.ops.n_q;
  std::vector<double> weighted(pointwise_values.size());
  for (std::size_t idx = 0; idx < pointwise_values.size(); ++idx) {
    weighted[idx] = pointwise_values[idx] * disc.ops.quad_weights[idx % n_q];
  }
  return pairwise_sum(weighted);
}

} // namespace dgmc
