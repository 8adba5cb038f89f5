/// @file diagnostics.hpp
/// @brief Measured quantities: pressure-equilibrium error, global energy and
///        its conservation error, normalized L2 errors, and convergence
///        rates. All read-only over the solution.

#pragma once

#include "mesh_basis.hpp"
#include "state.hpp"
#include "thermo.hpp"

#include <functional>
#include <vector>

namespace dgmc {

struct NonPositiveError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Max over all quadrature points of |P - P0| / P0 * 100.
double pressure_error_percent(const Discretization& disc, const ThermoTable& table,
                              const GlobalSolution& sol, double P0);

/// Quadrature integral of the pointwise total energy density over the domain.
double global_energy(const Discretization& disc, const ThermoTable& table,
                     const GlobalSolution& sol);

/// | (E(t) - E(0)) / E(0) | * 100 from the two global-energy values.
double energy_conservation_error_percent(double energy_now, double energy_initial);

/// Primitive exact-solution sampler: fills the m state components at (x).
using ExactSampler = std::function<void(double x, std::span<double> state)>;

struct L2Errors {
  std::vector<double> per_component; // normalized, one per state slot
  double combined = 0.0;             // root of the summed squares
};

/// Quadrature L2 error of the normalized state variables against an exact
/// sampler evaluated at the quadrature points.
L2Errors normalized_l2_error(const Discretization& disc, const GlobalSolution& sol,
                             const ExactSampler& exact, const NormalizationRefs& refs);

/// rate_k = log(e_k / e_{k+1}) / log(s_k / s_{k+1}); sizes must be positive
/// and of equal length >= 2.
std::vector<double> convergence_rates(std::span<const double> errors,
                                      std::span<const double> sizes);

double mean(std::span<const double> values);

} // namespace dgmc
