#include "corrections.hpp"

#include "mesh_basis.hpp"

#include <cmath>

namespace dgmc {

double energy_consistency_error(std::span<const double> w_hat, std::span<const double> residual,
                                int n_b, int m, double surface_energy_flux) {
  double acc = 0.0;
  for (int k = 0; k < n_b * m; ++k) acc += w_hat[k] * residual[k];
  return surface_energy_flux - acc;
}

ElementCorrection apply_elementwise_correction(std::span<const double> w_hat,
                                               std::span<const double> z_hat, double energy_error,
                                               int n_b, int m, const CorrectionConfig& cfg,
                                               std::span<const double> denom_scale,
                                               std::span<const bool> masked,
                                               std::span<double> residual) {
  ElementCorrection out;
  if (cfg.variant == CorrectionVariant::none) return out;
  const bool modified = cfg.variant == CorrectionVariant::modified;
  const std::span<const double> aux = modified ? z_hat : w_hat;

  double w_mean[kMaxComponents]{}, aux_mean[kMaxComponents]{};
  for (int k = 0; k < n_b; ++k) {
    for (int c = 0; c < m; ++c) {
      w_mean[c] += w_hat[k * m + c];
      aux_mean[c] += aux[k * m + c];
    }
  }
  for (int c = 0; c < m; ++c) {
    w_mean[c] /= n_b;
    aux_mean[c] /= n_b;
  }

  double den = 0.0, den_scaled = 0.0;
  for (int k = 0; k < n_b; ++k) {
    for (int c = 0; c < m; ++c) {
      if (!masked.empty() && masked[c]) continue;
      const double dw = w_hat[k * m + c] - w_mean[c];
      const double da = aux[k * m + c] - aux_mean[c];
      den += dw * da;
      den_scaled += dw * da / denom_scale[c];
    }
  }
  out.negative_denominator = den_scaled < 0.0;
  if (!(den_scaled >= cfg.alpha_tol)) return out; // tolerance-zeroed (or negative)

  out.alpha = energy_error / den;
  out.applied = true;
  for (int k = 0; k < n_b; ++k) {
    for (int c = 0; c < m; ++c) {
      if (!masked.empty() && masked[c]) continue;
      residual[k * m + c] += out.alpha * (aux[k * m + c] - aux_mean[c]);
    }
  }
  return out;
}

bool is_uniform_element(std::span<const double> coeff, int n_b, int m,
                        std::span<const double> component_floor, double tol) {
  double mean[kMaxComponents]{};
  for (int k = 0; k < n_b; ++k) {
    for (int c = 0; c < m; ++c) mean[c] += coeff[k * m + c];
  }
  for (int c = 0; c < m; ++c) mean[c] /= n_b;
  for (int k = 0; k < n_b; ++k) {
    for (int c = 0; c < m; ++c) {
      if (std::abs(coeff[k * m + c] - mean[c]) > tol * (std::abs(mean[c]) + component_floor[c])) {
        return false;
      }
    }
  }
  return true;
}

} // namespace dgmc
