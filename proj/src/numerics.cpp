#include "numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace dgmc {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

// Legendre polynomial P_n and derivative at x via the three-term recurrence.
void legendre_eval(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

void gauss_legendre(int n, std::vector<double>& points, std::vector<double>& weights) {
  points.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre_eval(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_eval(n, x, p, dp);
    points[i] = -x;
    points[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) points[n / 2] = 0.0;
}

void gauss_lobatto(int n, std::vector<double>& points, std::vector<double>& weights) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto: need at least 2 points");
  points.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = n - 1;
  points[0] = -1.0;
  points[m] = 1.0;
  weights[0] = weights[m] = 2.0 / (m * (m + 1.0));
  // Interior points are the roots of P'_{n-1}; Newton with a Chebyshev-Lobatto guess.
  for (int i = 1; i <= (n - 1) / 2; ++i) {
    double x = std::cos(M_PI * i / m);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre_eval(m, x, p, dp);
      // d/dx P'_m from the Legendre ODE: (1-x^2) P''_m = 2x P'_m - m(m+1) P_m.
      const double d2p = (2.0 * x * dp - m * (m + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p, dp;
    legendre_eval(m, x, p, dp);
    points[i] = -x;
    points[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / (m * (m + 1.0) * p * p);
  }
  if (n % 2 == 1) {
    const int mid = n / 2;
    points[mid] = 0.0;
    double p, dp;
    legendre_eval(m, 0.0, p, dp);
    weights[mid] = 2.0 / (m * (m + 1.0) * p * p);
  }
}

bool cholesky_factor(std::span<double> a, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (d <= 0.0) return false;
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / ljj;
    }
    for (int k = j + 1; k < n; ++k) a[j * n + k] = 0.0;
  }
  return true;
}

void cholesky_solve(std::span<const double> chol, int n, std::span<double> x) {
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= chol[i * n + k] * x[k];
    x[i] = s / chol[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= chol[k * n + i] * x[k];
    x[i] = s / chol[i * n + i];
  }
}

void lagrange_values(std::span<const double> nodes, double x, std::span<double> out) {
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i) {
    double v = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      v *= (x - nodes[j]) / (nodes[i] - nodes[j]);
    }
    out[i] = v;
  }
}

void lagrange_derivatives(std::span<const double> nodes, double x, std::span<double> out) {
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      double term = 1.0 / (nodes[i] - nodes[k]);
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        term *= (x - nodes[j]) / (nodes[i] - nodes[j]);
      }
      acc += term;
    }
    out[i] = acc;
  }
}

} // namespace dgmc
