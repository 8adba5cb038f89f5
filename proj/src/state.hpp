/// @file state.hpp
/// @brief State-vector layout, scheme identifiers, global solution storage,
///        and the reference scales used for normalized diagnostics and
///        correction tolerances.

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace dgmc {

/// Maximum species count supported by the fixed-size point workspaces.
inline constexpr int kMaxSpecies = 8;
inline constexpr int kMaxComponents = kMaxSpecies + 2;

enum class Formulation { energy, pressure };
enum class IntegrationMode { colocated, overintegrated };

/// The five schemes compared by the solver. P-schemes evolve
/// (rho v, P, C_i) and use overintegration; E-schemes evolve
/// (rho v, rho e_t, C_i).
enum class Scheme { P1, P2, P3, E1, E2 };

enum class CorrectionVariant { none, original, modified };

constexpr Formulation formulation_of(Scheme s) {
  return (s == Scheme::E1 || s == Scheme::E2) ? Formulation::energy : Formulation::pressure;
}
constexpr IntegrationMode integration_mode_of(Scheme s) {
  return s == Scheme::E2 ? IntegrationMode::colocated : IntegrationMode::overintegrated;
}
constexpr CorrectionVariant correction_of(Scheme s) {
  switch (s) {
    case Scheme::P2: return CorrectionVariant::original;
    case Scheme::P3: return CorrectionVariant::modified;
    default: return CorrectionVariant::none;
  }
}

std::string to_string(Scheme s);
bool scheme_from_string(std::string_view text, Scheme& out);

/// Component layout shared by both formulations in 1D:
///   slot 0: momentum, slot 1: pressure or total-energy density,
///   slots 2..: molar concentrations.
struct StateLayout {
  int n_species = 0;
  int m() const { return 2 + n_species; }
  static constexpr int momentum = 0;
  static constexpr int zeta = 1; // P (pressure form) or rho e_t (energy form)
  static constexpr int species(int i) { return 2 + i; }
};

/// Per-element polynomial coefficients of the m state components.
/// Storage is node-major inside each element: [(e*n_b + k)*m + comp].
struct GlobalSolution {
  Formulation form = Formulation::pressure;
  int n_elements = 0;
  int n_b = 0;
  int m = 0;
  double time = 0.0;
  std::vector<double> coeff;

  void resize(int elements, int nb, int comps) {
    n_elements = elements;
    n_b = nb;
    m = comps;
    coeff.assign(static_cast<std::size_t>(elements) * nb * comps, 0.0);
  }
  double* node(int e, int k) { return coeff.data() + (static_cast<std::size_t>(e) * n_b + k) * m; }
  const double* node(int e, int k) const {
    return coeff.data() + (static_cast<std::size_t>(e) * n_b + k) * m;
  }
  std::span<double> element(int e) {
    return {coeff.data() + static_cast<std::size_t>(e) * n_b * m,
            static_cast<std::size_t>(n_b) * m};
  }
  std::span<const double> element(int e) const {
    return {coeff.data() + static_cast<std::size_t>(e) * n_b * m,
            static_cast<std::size_t>(n_b) * m};
  }
};

/// Reference values for the normalized state variables
///   mom' = mom / sqrt(rho_r P_r), zeta' = zeta / P_r, C' = (R0 T_r / P_r) C.
/// Nondimensional cases use unit references with R0 = 1 so that the
/// normalized variables coincide with the raw state.
struct NormalizationRefs {
  double rho_r = 1.0;     // kg/m^3
  double P_r = 101325.0;  // Pa
  double T_r = 298.15;    // K
  double R0 = 8.31446261815324;

  double momentum_scale() const { return std::sqrt(rho_r * P_r); }
  double velocity_scale() const { return std::sqrt(P_r / rho_r); }
  double conc_scale() const { return P_r / (R0 * T_r); }

  /// Scale of a state component (divide by this to normalize).
  double state_scale(int comp) const {
    if (comp == StateLayout::momentum) return momentum_scale();
    if (comp == StateLayout::zeta) return P_r;
    return conc_scale();
  }
  /// Scale of a component of w = d(rho e_t)/dy.
  double w_scale(int comp) const {
    if (comp == StateLayout::momentum) return velocity_scale();
    if (comp == StateLayout::zeta) return 1.0;
    return R0 * T_r; // dE/dC_i carries J/mol
  }
  /// Scale of a component of the auxiliary vector z. The momentum slot is
  /// v * sum W_i dE/dC_i, so its scale combines velocity, molar mass
  /// (rho_r / conc_scale), and dE/dC scales.
  double z_scale(int comp) const {
    if (comp == StateLayout::momentum) {
      return velocity_scale() * (rho_r / conc_scale()) * (R0 * T_r);
    }
    if (comp == StateLayout::zeta) return P_r;
    return R0 * T_r;
  }

  static NormalizationRefs nondimensional() { return {1.0, 1.0, 1.0, 1.0}; }
};

} // namespace dgmc
