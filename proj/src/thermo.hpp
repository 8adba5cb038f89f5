/// @file thermo.hpp
/// @brief Thermally-perfect-gas properties: NASA-7 species data, mixture
///        evaluation, ideal-gas EOS inversions, and the auxiliary vectors
///        used by the energy-conservation corrections.
///
/// All operations are pure functions of their inputs and safe to call from
/// any number of threads.

#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgmc {

/// Universal gas constant, J/(mol K).
inline constexpr double kUniversalGasConstant = 8.31446261815324;

struct ThermoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TemperatureOutOfRange : ThermoError {
  using ThermoError::ThermoError;
};
struct VacuumState : ThermoError {
  using ThermoError::ThermoError;
};
struct NoConvergence : ThermoError {
  using ThermoError::ThermoError;
};

/// One NASA-7 polynomial interval: cp/R = a0 + a1 T + ... + a4 T^4,
/// h/R = a0 T + a1 T^2/2 + ... + a4 T^5/5 + b1, with a = (a0..a4, b1, b2).
struct ThermoInterval {
  double t_low = 0.0;
  double t_high = 0.0;
  std::array<double, 7> a{};
};

/// NASA-7 data for one species. Intervals are contiguous and ordered by
/// temperature; molar mass in kg/mol.
struct SpeciesThermo {
  std::string name;
  double molar_mass = 0.0;
  std::vector<ThermoInterval> intervals;

  double t_min() const { return intervals.front().t_low; }
  double t_max() const { return intervals.back().t_high; }
};

/// Species set plus the gas constant of the working unit system (R0 = 1 for
/// nondimensional cases, the SI value otherwise).
struct ThermoTable {
  std::vector<SpeciesThermo> species;
  double gas_constant = kUniversalGasConstant;
  /// Fractional extrapolation allowed beyond each interval endpoint before
  /// TemperatureOutOfRange is raised.
  double extrapolation_margin = 0.1;

  int n_species() const { return static_cast<int>(species.size()); }
  int find(std::string_view name) const; // -1 if absent
};

/// Mass-specific cp, h, u of one species at temperature T.
struct SpeciesProps {
  double cp = 0.0;
  double h = 0.0;
  double u = 0.0;
};

/// cp from the NASA-7 polynomial on the interval containing T; h from the
/// matching enthalpy polynomial; u = h - (R0/W) T.
SpeciesProps species_properties(const SpeciesThermo& s, double T, double gas_constant,
                                double extrapolation_margin = 0.1);

/// True when T needed extrapolation beyond the tabulated range (still inside
/// the allowed margin). Callers may count these as run diagnostics.
bool temperature_is_extrapolated(const SpeciesThermo& s, double T);

struct MixtureProps {
  double rho = 0.0;      // kg/m^3
  double sum_conc = 0.0; // mol/m^3
  double R = 0.0;        // J/(kg K)
  double cv = 0.0;       // J/(kg K)
  double cp = 0.0;       // J/(kg K)
  double gamma = 0.0;
  double u = 0.0;        // mixture internal energy, J/kg
};

/// Mixture-averaged properties at temperature T for molar concentrations
/// `conc` (one per table species). Species with zero concentration do not
/// participate in the range check but their data must still bracket T loosely.
MixtureProps mixture_properties(const ThermoTable& table, double T, std::span<const double> conc);

/// Speed of sound c = sqrt(gamma P / rho) for thermally perfect gases.
double sound_speed(double gamma, double P, double rho);

/// Ideal-gas law: P = R0 T sum(C_i).
double pressure_from_temperature(const ThermoTable& table, double T, std::span<const double> conc);

/// Closed-form inversion T = P / (R0 sum(C_i)).
double temperature_from_pressure(const ThermoTable& table, double P, std::span<const double> conc);

/// Inverts the mixture internal energy u(T) = u_target by Newton iteration
/// (cv > 0 makes u monotone) with a bisection fallback over the valid range.
double temperature_from_internal_energy(const ThermoTable& table, double u_target,
                                        std::span<const double> conc, double T_guess,
                                        double rel_tol = 1e-10, int max_iter = 50);

/// Total energy density rho*e_t for a pressure-based point state
/// (momentum, P, C_1..C_ns) with d = 1.
double total_energy_density(const ThermoTable& table, double momentum, double P,
                            std::span<const double> conc);

/// Derivative of rho*e_t with respect to the pressure-based state:
/// w = ( v, rho*cv / (R0 sum C), W_i u_i - rho*cv*P/(R0 (sum C)^2) - W_i v^2/2 ).
/// `w` must have size 2 + n_species.
void energy_state_derivative(const ThermoTable& table, double momentum, double P,
                             std::span<const double> conc, std::span<double> w);

/// Auxiliary variables for the equilibrium-preserving correction:
/// z = ( v * sum_i W_i dE/dC_i, P, dE/dC_1, ..., dE/dC_ns ) where the species
/// slots are copied from w. `w` and `z` must have size 2 + n_species.
void correction_variables(const ThermoTable& table, double momentum, double P,
                          std::span<const double> conc, std::span<const double> w,
                          std::span<double> z);

} // namespace dgmc
