#include "physics_flux.hpp"

#include <cmath>

namespace dgmc {

EvalPoint evaluate_point(const ThermoTable& table, Formulation form, std::span<const double> y,
                         double T_hint) {
  EvalPoint ep;
  const int ns = table.n_species();
  const double R0 = table.gas_constant;
  const std::span<const double> conc = y.subspan(2, ns);

  for (int i = 0; i < ns; ++i) {
    ep.sum_conc += conc[i];
    ep.rho += table.species[i].molar_mass * conc[i];
  }
  if (!(ep.rho > 0.0)) throw VacuumState("evaluate_point: nonpositive density");
  ep.v = y[StateLayout::momentum] / ep.rho;

  if (form == Formulation::pressure) {
    ep.P = y[StateLayout::zeta];
    if (!(ep.sum_conc > 0.0)) throw VacuumState("evaluate_point: nonpositive concentration sum");
    ep.T = ep.P / (R0 * ep.sum_conc);
  } else {
    const double rho_et = y[StateLayout::zeta];
    const double u_mix = (rho_et - 0.5 * ep.rho * ep.v * ep.v) / ep.rho;
    double guess = T_hint;
    if (!(guess > 0.0)) {
      // mid-range starting point over the present species
      double lo = 0.0, hi = 1e99;
      for (int i = 0; i < ns; ++i) {
        if (conc[i] == 0.0) continue;
        lo = std::max(lo, table.species[i].t_min());
        hi = std::min(hi, table.species[i].t_max());
      }
      guess = 0.5 * (lo + hi);
    }
    ep.T = temperature_from_internal_energy(table, u_mix, conc, guess);
    ep.P = R0 * ep.T * ep.sum_conc;
  }
  if (!(ep.T > 0.0) || !std::isfinite(ep.T)) {
    throw TemperatureOutOfRange("evaluate_point: invalid temperature");
  }

  double rho_cp = 0.0, rho_u = 0.0;
  for (int i = 0; i < ns; ++i) {
    const SpeciesThermo& s = table.species[i];
    ep.extrapolated = ep.extrapolated || (conc[i] != 0.0 && temperature_is_extrapolated(s, ep.T));
    const SpeciesProps sp =
        species_properties(s, ep.T, R0, conc[i] == 0.0 ? 1e99 : table.extrapolation_margin);
    ep.u_i[i] = sp.u;
    if (conc[i] != 0.0) {
      const double rho_i = s.molar_mass * conc[i];
      rho_cp += rho_i * sp.cp;
      ep.rho_cv += rho_i * (sp.cp - R0 / s.molar_mass);
      rho_u += rho_i * sp.u;
    }
  }
  if (!(ep.rho_cv > 0.0)) throw ThermoError("evaluate_point: nonpositive rho*cv");
  ep.gamma = rho_cp / ep.rho_cv;
  ep.c = std::sqrt(ep.gamma * ep.P / ep.rho);
  ep.rho_et = (form == Formulation::energy)
                  ? y[StateLayout::zeta]
                  : rho_u + 0.5 * y[StateLayout::momentum] * ep.v;
  return ep;
}

void aux_vectors_from_point(const ThermoTable& table, const EvalPoint& ep, std::span<double> w,
                            std::span<double> z, std::span<const char> species_mask) {
  const int ns = table.n_species();
  const double R0 = table.gas_constant;
  w[0] = ep.v;
  w[1] = ep.rho_cv / (R0 * ep.sum_conc);
  const double pressure_pull = ep.rho_cv * ep.P / (R0 * ep.sum_conc * ep.sum_conc);
  const double half_kinetic = 0.5 * ep.v * ep.v;
  double weighted = 0.0;
  for (int i = 0; i < ns; ++i) {
    const double W = table.species[i].molar_mass;
    w[2 + i] = W * ep.u_i[i] - pressure_pull - W * half_kinetic;
    if (species_mask.empty() || !species_mask[i]) weighted += W * w[2 + i];
    z[2 + i] = w[2 + i];
  }
  z[0] = ep.v * weighted;
  z[1] = ep.P;
}

void physical_flux(const EvalPoint& ep, std::span<const double> y, Formulation form,
                   std::span<double> flux) {
  const double v = ep.v;
  flux[StateLayout::momentum] = y[StateLayout::momentum] * v + ep.P;
  flux[StateLayout::zeta] =
      (form == Formulation::energy) ? v * (ep.rho_et + ep.P) : ep.P * v;
  for (std::size_t i = 2; i < y.size(); ++i) flux[i] = v * y[i];
}

double nonconservative_volume(const ThermoTable& table, const EvalPoint& ep,
                              std::span<const double> dy_dx) {
  double mass_grad = 0.0;
  for (int i = 0; i < table.n_species(); ++i) {
    mass_grad += table.species[i].molar_mass * dy_dx[2 + i];
  }
  const double coeff = (ep.rho * ep.c * ep.c - ep.P) / ep.rho;
  return coeff * (dy_dx[StateLayout::momentum] - ep.v * mass_grad);
}

double wave_speed_estimate(const EvalPoint& plus, const EvalPoint& minus) {
  return std::max(std::abs(plus.v) + plus.c, std::abs(minus.v) + minus.c);
}

void lax_friedrichs_flux(const EvalPoint& ep_plus, std::span<const double> y_plus,
                         const EvalPoint& ep_minus, std::span<const double> y_minus,
                         Formulation form, double n, double lambda, std::span<double> flux) {
  const std::size_t m = y_plus.size();
  double fp[kMaxComponents], fm[kMaxComponents];
  physical_flux(ep_plus, y_plus, form, {fp, m});
  physical_flux(ep_minus, y_minus, form, {fm, m});
  for (std::size_t c = 0; c < m; ++c) {
    flux[c] = 0.5 * (fp[c] + fm[c]) * n + 0.5 * lambda * (y_plus[c] - y_minus[c]);
  }
}

double pressure_jump_term(const ThermoTable& table, std::span<const double> y_plus,
                          std::span<const double> y_minus, double n) {
  const std::size_t m = y_plus.size();
  double avg[kMaxComponents];
  for (std::size_t c = 0; c < m; ++c) avg[c] = 0.5 * (y_plus[c] + y_minus[c]);
  const EvalPoint ea = evaluate_point(table, Formulation::pressure, {avg, m});
  const double coeff = 0.5 * (ea.rho * ea.c * ea.c - ea.P) / ea.rho;
  double mass_jump = 0.0;
  for (int i = 0; i < table.n_species(); ++i) {
    mass_jump += table.species[i].molar_mass * (y_minus[2 + i] - y_plus[2 + i]);
  }
  return coeff * (n * (y_minus[StateLayout::momentum] - y_plus[StateLayout::momentum]) -
                  ea.v * n * mass_jump);
}

double energy_interface_flux_lf(const EvalPoint& ep_plus, const EvalPoint& ep_minus, double n,
                                double lambda) {
  const double f_plus = ep_plus.v * (ep_plus.rho_et + ep_plus.P);
  const double f_minus = ep_minus.v * (ep_minus.rho_et + ep_minus.P);
  return 0.5 * (f_plus + f_minus) * n + 0.5 * lambda * (ep_plus.rho_et - ep_minus.rho_et);
}

double energy_interface_flux_modified(const EvalPoint& ep_plus, const EvalPoint& ep_minus,
                                      std::span<const double> w_plus,
                                      std::span<const double> w_minus,
                                      std::span<const double> flux_plus,
                                      std::span<const double> flux_minus, double n,
                                      std::span<const double> face_flux) {
  const double f_plus = ep_plus.v * (ep_plus.rho_et + ep_plus.P);
  const double f_minus = ep_minus.v * (ep_minus.rho_et + ep_minus.P);
  double wf_plus = 0.0, wf_minus = 0.0, wavg_face = 0.0;
  for (std::size_t c = 0; c < w_plus.size(); ++c) {
    wf_plus += w_plus[c] * flux_plus[c];
    wf_minus += w_minus[c] * flux_minus[c];
    wavg_face += 0.5 * (w_plus[c] + w_minus[c]) * face_flux[c];
  }
  return 0.5 * (f_plus + f_minus) * n - 0.5 * (wf_plus + wf_minus) * n + wavg_face;
}

FaceCorrectionResult corrected_interface_flux(
    std::span<const double> w_plus, std::span<const double> w_minus,
    std::span<const double> z_plus, std::span<const double> z_minus,
    std::span<const double> flux_plus, std::span<const double> flux_minus, double energy_jump_n,
    double n, std::span<const double> wz_scale, double beta_tol, std::span<const bool> masked,
    std::span<double> flux) {
  const std::size_t m = w_plus.size();
  FaceCorrectionResult out;

  double den = 0.0, den_scaled = 0.0;
  double wjump_dot_flux = 0.0, wf_jump = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    if (!masked.empty() && masked[c]) continue;
    const double dw = w_plus[c] - w_minus[c];
    const double dz = z_plus[c] - z_minus[c];
    den += dw * dz;
    den_scaled += dw * dz / wz_scale[c];
    wjump_dot_flux += dw * flux[c];
    wf_jump += (w_plus[c] * flux_plus[c] - w_minus[c] * flux_minus[c]) * n;
  }
  // Signed check: a negative denominator also disables the correction.
  if (!(den_scaled >= beta_tol)) return out;

  out.beta = (-energy_jump_n - wjump_dot_flux + wf_jump) / den;
  out.applied = true;
  for (std::size_t c = 0; c < m; ++c) {
    if (!masked.empty() && masked[c]) continue;
    flux[c] += out.beta * (z_plus[c] - z_minus[c]);
  }
  return out;
}

} // namespace dgmc
