/// @file cases.hpp
/// @brief Test-case registry: initial conditions, exact solutions where
///        available, and the manufactured-solution source used to verify
///        the nonconservative terms.

#pragma once

#include "dg_residual.hpp"
#include "diagnostics.hpp"
#include "state.hpp"
#include "thermo.hpp"
#include "thermo_parser.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dgmc {

struct CaseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CaseHasNoExact : CaseError {
  using CaseError::CaseError;
};

struct CaseSpec {
  std::string name;
  double x_left = -0.5;
  double x_right = 0.5;
  std::vector<std::string> species_names;
  std::string default_thermo_file; // resolved against the data search path
  double gas_constant = kUniversalGasConstant;
  NormalizationRefs refs;

  /// Pressure-form primitive state (momentum, P, C_1..C_ns) at x.
  std::function<void(double x, std::span<double> y)> initial;
  /// Exact pressure-form state at (x, t); null when unavailable.
  std::function<void(double x, double t, std::span<double> y)> exact;
  /// Manufactured source; null for physical cases.
  SourceFn source;

  double advection_speed = 0.0;      // v0 defining the period tau
  double background_pressure = 0.0;  // P0 for equilibrium diagnostics
  int default_elements = 50;
  int default_degree = 3;
  double default_cfl = 0.6;
  double default_periods = 1.0;

  int n_species() const { return static_cast<int>(species_names.size()); }
  double domain_length() const { return x_right - x_left; }
  /// Time to advect one period; requires a nonzero advection speed.
  double period() const;
  bool has_exact() const { return static_cast<bool>(exact); }
};

std::vector<std::string> case_names();

/// Builds the named case. The table must contain the case's species (in
/// order); build it with make_case_table from the parsed database.
CaseSpec build_case(const std::string& name, const ThermoTable& table);

/// Species list and thermo-file defaults needed before thermo data is loaded.
struct CaseInfo {
  std::vector<std::string> species_names;
  std::string default_thermo_file;
  double gas_constant = kUniversalGasConstant;
};
CaseInfo case_info(const std::string& name);

/// Selects the case species from a parsed database, in case order.
ThermoTable make_case_table(const ThermoDatabase& db, const CaseInfo& info,
                            double extrapolation_margin = 0.1);

/// Interpolates the case initial condition onto the discretization nodes,
/// converting to the energy form when requested.
GlobalSolution initialize_solution(const CaseSpec& cs, const Discretization& disc,
                                   const ThermoTable& table, Formulation form);

/// Periodically wrapped exact solution sampler at time t, converted to the
/// requested formulation (the zeta slot is total energy for the energy form).
ExactSampler exact_sampler(const CaseSpec& cs, const ThermoTable& table, Formulation form,
                           double t);

} // namespace dgmc
