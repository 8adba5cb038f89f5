#include "diagnostics.hpp"

#include "numerics.hpp"
#include "physics_flux.hpp"

#include <cmath>

namespace dgmc {

double pressure_error_percent(const Discretization& disc, const ThermoTable& table,
                              const GlobalSolution& sol, double P0) {
  const int n_q = disc.ops.n_q;
  const int m = sol.m;
  std::vector<double> qs(static_cast<std::size_t>(n_q) * m);
  double worst = 0.0;
  double hint = 0.0;
  for (int e = 0; e < sol.n_elements; ++e) {
    interpolate_to_quadrature(disc.ops, sol.element(e), m, qs);
    for (int q = 0; q < n_q; ++q) {
      const EvalPoint ep = evaluate_point(table, sol.form,
                                          {qs.data() + q * m, static_cast<std::size_t>(m)}, hint);
      hint = ep.T;
      worst = std::max(worst, std::abs(ep.P - P0) / P0);
    }
  }
  return worst * 100.0;
}

double global_energy(const Discretization& disc, const ThermoTable& table,
                     const GlobalSolution& sol) {
  const int n_q = disc.ops.n_q;
  const int m = sol.m;
  std::vector<double> qs(static_cast<std::size_t>(n_q) * m);
  std::vector<double> values(static_cast<std::size_t>(sol.n_elements) * n_q);
  double hint = 0.0;
  for (int e = 0; e < sol.n_elements; ++e) {
    interpolate_to_quadrature(disc.ops, sol.element(e), m, qs);
    for (int q = 0; q < n_q; ++q) {
      const EvalPoint ep = evaluate_point(table, sol.form,
                                          {qs.data() + q * m, static_cast<std::size_t>(m)}, hint);
      hint = ep.T;
      values[static_cast<std::size_t>(e) * n_q + q] = ep.rho_et;
    }
  }
  return integrate_global(disc, values);
}

double energy_conservation_error_percent(double energy_now, double energy_initial) {
  return std::abs((energy_now - energy_initial) / energy_initial) * 100.0;
}

L2Errors normalized_l2_error(const Discretization& disc, const GlobalSolution& sol,
                             const ExactSampler& exact, const NormalizationRefs& refs) {
  const int n_q = disc.ops.n_q;
  const int m = sol.m;
  const int N = sol.n_elements;
  std::vector<double> qs(static_cast<std::size_t>(n_q) * m);
  std::vector<double> ex(m);
  // per-component squared contributions, accumulated pairwise for stability
  std::vector<std::vector<double>> sq(m);
  for (int c = 0; c < m; ++c) sq[c].resize(static_cast<std::size_t>(N) * n_q);

  for (int e = 0; e < N; ++e) {
    interpolate_to_quadrature(disc.ops, sol.element(e), m, qs);
    for (int q = 0; q < n_q; ++q) {
      exact(disc.quad_x(e, q), ex);
      const double w = disc.ops.quad_weights[q];
      for (int c = 0; c < m; ++c) {
        const double diff = (qs[q * m + c] - ex[c]) / refs.state_scale(c);
        sq[c][static_cast<std::size_t>(e) * n_q + q] = w * diff * diff;
      }
    }
  }
  L2Errors out;
  out.per_component.resize(m);
  double total = 0.0;
  for (int c = 0; c < m; ++c) {
    const double s = pairwise_sum(sq[c]);
    out.per_component[c] = std::sqrt(s);
    total += s;
  }
  out.combined = std::sqrt(total);
  return out;
}

std::vector<double> convergence_rates(std::span<const double> errors,
                                      std::span<const double> sizes) {
  if (errors.size() != sizes.size() || errors.size() < 2) {
    throw NonPositiveError("convergence_rates: need matching sequences of length >= 2");
  }
  for (double e : errors) {
    if (!(e > 0.0)) throw NonPositiveError("convergence_rates: nonpositive error");
  }
  for (double s : sizes) {
    if (!(s > 0.0)) throw NonPositiveError("convergence_rates: nonpositive size");
  }
  std::vector<double> rates;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    rates.push_back(std::log(errors[k] / errors[k + 1]) / std::log(sizes[k] / sizes[k + 1]));
  }
  return rates;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

} // namespace dgmc
