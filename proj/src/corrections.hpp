/// @file corrections.hpp
/// @brief Elementwise energy-conservation corrections (original and
///        equilibrium-preserving variants), the energy-consistency error,
///        uniform-element detection, and zero-species masking.

#pragma once

#include "state.hpp"

#include <span>

namespace dgmc {

struct CorrectionConfig {
  CorrectionVariant variant = CorrectionVariant::none;
  double alpha_tol = 1e-7;    // elementwise denominator threshold (normalized units)
  double beta_tol = 1e-6;     // face denominator threshold (normalized units)
  double uniform_tol = 1e-12; // relative uniform-element detection
  bool zero_species_masking = false; // enabled with the modified variant
};

struct ElementCorrection {
  double alpha = 0.0;
  bool applied = false;            // false when alpha was tolerance-zeroed
  bool negative_denominator = false;
};

/// Energy-consistency error E = surface_energy_flux - sum_k w_hat_k . residual_k.
/// `w_hat` and `residual` are n_b x m row-major.
double energy_consistency_error(std::span<const double> w_hat, std::span<const double> residual,
                                int n_b, int m, double surface_energy_flux);

/// Computes the elementwise correction r_k = alpha (aux_k - aux_mean) where
/// aux is w_hat (original variant) or z_hat (modified variant), and adds it
/// to `residual`. alpha enforces sum_k w_hat_k . (residual_k + r_k) =
/// surface flux; it is zeroed when the per-slot-rescaled denominator falls
/// below cfg.alpha_tol (negative values included). Slots flagged in `masked`
/// are excluded from the denominator and receive no correction.
ElementCorrection apply_elementwise_correction(std::span<const double> w_hat,
                                               std::span<const double> z_hat, double energy_error,
                                               int n_b, int m, const CorrectionConfig& cfg,
                                               std::span<const double> denom_scale,
                                               std::span<const bool> masked,
                                               std::span<double> residual);

/// True when every coefficient of every component deviates from the element
/// coefficient mean by at most tol * (|mean| + component_floor).
bool is_uniform_element(std::span<const double> coeff, int n_b, int m,
                        std::span<const double> component_floor, double tol);

} // namespace dgmc
