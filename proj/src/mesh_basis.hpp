/// @file mesh_basis.hpp
/// @brief 1D periodic mesh, nodal Gauss-Lobatto basis, quadrature rules, and
///        the discrete element operators (mass matrix, interpolation,
///        projection, volume-gradient contraction).

#pragma once

#include "state.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace dgmc {

struct UnsupportedDegree : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Mesh1D {
  int n_elements = 0;
  double x_left = -0.5;
  double x_right = 0.5;
  bool periodic = true;

  double length() const { return x_right - x_left; }
  double h() const { return length() / n_elements; }
  double element_left(int e) const { return x_left + e * h(); }
  /// Physical coordinate of reference point xi in element e.
  double x_of(int e, double xi) const { return element_left(e) + 0.5 * (xi + 1.0) * h(); }
};

/// Nodal basis: Lagrange cardinal functions on p+1 Gauss-Lobatto points.
struct Basis {
  int degree = 0;
  std::vector<double> nodes; // strictly increasing, in [-1, 1]
  int n_basis() const { return degree + 1; }
};

/// Discrete operators on the reference element, with the affine Jacobian h/2
/// absorbed where noted. Row-major storage.
struct Operators {
  IntegrationMode mode = IntegrationMode::overintegrated;
  int n_b = 0;
  int n_q = 0;

  std::vector<double> mass;      // n_b x n_b, physical scaling (h absorbed)
  std::vector<double> mass_chol; // Cholesky factor of mass
  std::vector<double> mass_diag; // diagonal entries when colocated, else empty

  std::vector<double> quad_interp;  // V_q: n_q x n_b, values of phi_j at x_q
  std::vector<double> quad_weights; // n_q, physical (h/2 absorbed)
  std::vector<double> quad_points;  // n_q reference coordinates

  /// Volume flux contraction G[i*n_q + q] = w_ref_q * dphi_i/dxi(xi_q); the
  /// affine Jacobians of the weight and the derivative cancel, so
  /// integral(dphi_i/dx * f) = sum_q G[i][q] f_q holds in physical space.
  std::vector<double> grad_flux;

  /// Derivative interpolation to quadrature points in physical coordinates:
  /// Dx[q*n_b + j] = dphi_j/dx(x_q).
  std::vector<double> quad_deriv;

  /// Stiffness S[i*n_b + j] = integral(dphi_i/dx * phi_j) (physical).
  std::vector<double> stiffness;

  bool colocated() const { return mode == IntegrationMode::colocated; }
};

struct Discretization {
  Mesh1D mesh;
  Basis basis;
  Operators ops;

  int n_faces() const { return mesh.n_elements; } // periodic: one face per element
  double quad_x(int e, int q) const { return mesh.x_of(e, ops.quad_points[q]); }
};

/// Builds the nodal discretization. Colocated mode quadratures at the p+1
/// Gauss-Lobatto nodes with the lumped (diagonal) mass matrix;
/// overintegrated mode uses p+2 Gauss-Legendre points and the exact dense
/// mass matrix.
Discretization build_discretization(int n_elements, int degree, IntegrationMode mode,
                                    double x_left = -0.5, double x_right = 0.5);

/// Quadrature-based L2 projection of nodal-at-quadrature values onto the
/// element polynomial space: coeff = M^{-1} V_q^T W values. With colocated
/// quadrature this recovers the interpolant, returned as a direct copy.
/// `values` and `coeff` hold m interleaved components per point
/// (size n_q*m and n_b*m).
void l2_project(const Operators& ops, std::span<const double> values, int m,
                std::span<double> coeff);

/// Interpolates element coefficients to the quadrature points:
/// values = V_q coeff, with m interleaved components.
void interpolate_to_quadrature(const Operators& ops, std::span<const double> coeff, int m,
                               std::span<double> values);

/// Arithmetic mean of the n_b coefficient rows (the correction terms use this
/// coefficient average, not the integral average).
void coefficient_average(std::span<const double> coeff, int n_b, int m, std::span<double> avg);

/// Global quadrature functional: sum over elements and points of
/// w_q * f(e, q). Deterministic pairwise reduction.
double integrate_global(const Discretization& disc,
                        const std::vector<double>& pointwise_values);

} // namespace dgmc
