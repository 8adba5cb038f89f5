/// @file numerics.hpp
/// @brief Small dense linear algebra and quadrature-rule construction.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dgmc {

/// Deterministic pairwise summation. Stabilizes round-off-level comparisons
/// independent of accumulation order elsewhere in the code.
double pairwise_sum(std::span<const double> values);

/// Gauss-Legendre points and weights on [-1, 1], exact for degree 2n-1.
void gauss_legendre(int n, std::vector<double>& points, std::vector<double>& weights);

/// Gauss-Lobatto points and weights on [-1, 1] (endpoints included),
/// exact for degree 2n-3.
void gauss_lobatto(int n, std::vector<double>& points, std::vector<double>& weights);

/// In-place Cholesky factorization of a row-major n x n SPD matrix.
/// Returns false if the matrix is not positive definite.
bool cholesky_factor(std::span<double> a, int n);

/// Solves L L^T x = b given the factor produced by cholesky_factor.
void cholesky_solve(std::span<const double> chol, int n, std::span<double> x);

/// Values of the n Lagrange cardinal polynomials on `nodes` at point x.
void lagrange_values(std::span<const double> nodes, double x, std::span<double> out);

/// First derivatives of the Lagrange cardinal polynomials at point x.
void lagrange_derivatives(std::span<const double> nodes, double x, std::span<double> out);

} // namespace dgmc
