/// @file physics_flux.hpp
/// @brief Pointwise state evaluation and the physical/numerical fluxes for
///        both formulations: Lax-Friedrichs flux, nonconservative pressure
///        terms, total-energy interface fluxes, and the equilibrium-
///        preserving face correction.

#pragma once

#include "state.hpp"
#include "thermo.hpp"

#include <array>
#include <optional>
#include <span>

namespace dgmc {

struct EnergyFormUnsupported : std::logic_error {
  using std::logic_error::logic_error;
};

/// Thermodynamic quantities derived from one point state. For the pressure
/// form the temperature is closed-form; the energy form inverts the mixture
/// internal energy with `T_hint` as the Newton starting point.
struct EvalPoint {
  double rho = 0.0;
  double v = 0.0;
  double P = 0.0;
  double T = 0.0;
  double sum_conc = 0.0;
  double rho_cv = 0.0;
  double gamma = 0.0;
  double c = 0.0;       // speed of sound
  double rho_et = 0.0;  // total energy density
  bool extrapolated = false;
  std::array<double, kMaxSpecies> u_i{}; // mass-specific internal energies
};

EvalPoint evaluate_point(const ThermoTable& table, Formulation form, std::span<const double> y,
                         double T_hint = 0.0);

/// Auxiliary vectors w = d(rho e_t)/dy and z from an already evaluated point
/// (no additional property evaluations). Matches energy_state_derivative and
/// correction_variables on the same state. `species_mask`, when nonempty,
/// excludes flagged species from the z momentum-slot sum — the zero-species
/// handling treats them as removed from the state vector.
void aux_vectors_from_point(const ThermoTable& table, const EvalPoint& ep, std::span<double> w,
                            std::span<double> z, std::span<const char> species_mask = {});

/// Physical flux per formulation; energy form carries v (rho e_t + P) in the
/// zeta slot, pressure form carries P v.
void physical_flux(const EvalPoint& ep, std::span<const double> y, Formulation form,
                   std::span<double> flux);

/// Pressure-slot value of B(y) : dy/dx, expanded with the chain rule so only
/// derivatives of the stored state components appear:
///   (rho c^2 - P)/rho * ( d(rho v)/dx - v sum_i W_i dC_i/dx ).
double nonconservative_volume(const ThermoTable& table, const EvalPoint& ep,
                              std::span<const double> dy_dx);

/// Maximum wave-speed estimate across the two trace states.
double wave_speed_estimate(const EvalPoint& plus, const EvalPoint& minus);

/// Local Lax-Friedrichs flux {{F}} . n + (lambda/2) (y+ - y-); `plus` is the
/// side whose outward normal is n.
void lax_friedrichs_flux(const EvalPoint& ep_plus, std::span<const double> y_plus,
                         const EvalPoint& ep_minus, std::span<const double> y_minus,
                         Formulation form, double n, double lambda, std::span<double> flux);

/// Pressure component of the nonconservative jump term
///   D_P = 1/2 (B_P . n)|_{{y}} . (y- - y+),
/// with the arithmetic average state. Pressure form only.
double pressure_jump_term(const ThermoTable& table, std::span<const double> y_plus,
                          std::span<const double> y_minus, double n);

/// Lax-Friedrichs-type total-energy interface flux
///   {{F_rho_et}} . n + (lambda/2) [[rho e_t]],
/// with rho e_t reconstructed pointwise from the pressure-form traces.
double energy_interface_flux_lf(const EvalPoint& ep_plus, const EvalPoint& ep_minus, double n,
                                double lambda);

/// Modified total-energy interface flux
///   {{F_rho_et}} . n - {{w^T F(y)}} . n + {{w}}^T F_face,
/// conservative and consistent for any conservative consistent F_face.
/// `w_plus`/`w_minus` are traces of the projected derivative field and
/// `flux_plus`/`flux_minus` the physical fluxes of the trace states.
double energy_interface_flux_modified(const EvalPoint& ep_plus, const EvalPoint& ep_minus,
                                      std::span<const double> w_plus,
                                      std::span<const double> w_minus,
                                      std::span<const double> flux_plus,
                                      std::span<const double> flux_minus, double n,
                                      std::span<const double> face_flux);

struct FaceCorrectionResult {
  double beta = 0.0;
  bool applied = false; // false when the denominator fell below tolerance
};

/// Equilibrium-preserving face correction: overwrites `flux` (the base
/// Lax-Friedrichs flux) with flux + beta [[z]], where beta enforces the
/// energy-compatibility identity
///   w+ . (F - F(y+).n) - w- . (F - F(y-).n) = -[[F_rho_et(y)]] . n.
/// Slots flagged in `masked` are excluded from all dot products and receive
/// no correction (zero-species handling). The tolerance is applied to the
/// denominator rescaled per slot by `wz_scale` (product of the w and z
/// normalization scales), so the threshold lives in nondimensional units.
FaceCorrectionResult corrected_interface_flux(
    std::span<const double> w_plus, std::span<const double> w_minus,
    std::span<const double> z_plus, std::span<const double> z_minus,
    std::span<const double> flux_plus, std::span<const double> flux_minus, double energy_jump_n,
    double n, std::span<const double> wz_scale, double beta_tol, std::span<const bool> masked,
    std::span<double> flux);

} // namespace dgmc
