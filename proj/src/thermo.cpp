#include "thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dgmc {

int ThermoTable::find(std::string_view name) const {
  for (int i = 0; i < n_species(); ++i) {
    if (species[i].name == name) return i;
  }
  return -1;
}

namespace {

const ThermoInterval& select_interval(const SpeciesThermo& s, double T, double margin) {
  for (const ThermoInterval& iv : s.intervals) {
    if (T >= iv.t_low && T <= iv.t_high) return iv;
  }
  const double lo = s.t_min();
  const double hi = s.t_max();
  if (T < lo) {
    if (T >= lo * (1.0 - margin)) return s.intervals.front();
    throw TemperatureOutOfRange("species '" + s.name + "': T = " + std::to_string(T) +
                                " below tabulated range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] plus margin");
  }
  if (T <= hi * (1.0 + margin)) return s.intervals.back();
  throw TemperatureOutOfRange("species '" + s.name + "': T = " + std::to_string(T) +
                              " above tabulated range [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "] plus margin");
}

} // namespace

SpeciesProps species_properties(const SpeciesThermo& s, double T, double gas_constant,
                                double extrapolation_margin) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw TemperatureOutOfRange("species '" + s.name + "': nonpositive or non-finite T");
  }
  const ThermoInterval& iv = select_interval(s, T, extrapolation_margin);
  const auto& a = iv.a;
  const double R = gas_constant / s.molar_mass;
  const double cp_over_R = a[0] + T * (a[1] + T * (a[2] + T * (a[3] + T * a[4])));
  const double h_over_R =
      T * (a[0] + T * (a[1] / 2.0 + T * (a[2] / 3.0 + T * (a[3] / 4.0 + T * a[4] / 5.0)))) + a[5];
  SpeciesProps out;
  out.cp = R * cp_over_R;
  out.h = R * h_over_R;
  out.u = out.h - R * T;
  return out;
}

bool temperature_is_extrapolated(const SpeciesThermo& s, double T) {
  return T < s.t_min() || T > s.t_max();
}

MixtureProps mixture_properties(const ThermoTable& table, double T, std::span<const double> conc) {
  MixtureProps out;
  double rho_cv = 0.0;
  double rho_cp = 0.0;
  double rho_u = 0.0;
  for (int i = 0; i < table.n_species(); ++i) {
    const double C = conc[i];
    out.sum_conc += C;
    const SpeciesThermo& s = table.species[i];
    const double rho_i = s.molar_mass * C;
    out.rho += rho_i;
    if (C == 0.0) continue; // range check applies only to present species
    const SpeciesProps p = species_properties(s, T, table.gas_constant, table.extrapolation_margin);
    const double R_i = table.gas_constant / s.molar_mass;
    rho_cp += rho_i * p.cp;
    rho_cv += rho_i * (p.cp - R_i);
    rho_u += rho_i * p.u;
  }
  if (!(out.rho > 0.0)) throw VacuumState("mixture_properties: nonpositive density");
  out.R = table.gas_constant * out.sum_conc / out.rho;
  out.cv = rho_cv / out.rho;
  out.cp = rho_cp / out.rho;
  out.gamma = out.cp / out.cv;
  out.u = rho_u / out.rho;
  return out;
}

double sound_speed(double gamma, double P, double rho) { return std::sqrt(gamma * P / rho); }

double pressure_from_temperature(const ThermoTable& table, double T, std::span<const double> conc) {
  double sum_c = 0.0;
  for (double C : conc) sum_c += C;
  return table.gas_constant * T * sum_c;
}

double temperature_from_pressure(const ThermoTable& table, double P, std::span<const double> conc) {
  double sum_c = 0.0;
  for (double C : conc) sum_c += C;
  if (!(sum_c > 0.0)) throw VacuumState("temperature_from_pressure: sum of concentrations <= 0");
  return P / (table.gas_constant * sum_c);
}

double temperature_from_internal_energy(const ThermoTable& table, double u_target,
                                        std::span<const double> conc, double T_guess,
                                        double rel_tol, int max_iter) {
  // Valid bracket: intersection of the present species' ranges plus margin.
  double t_lo = 0.0, t_hi = std::numeric_limits<double>::max();
  for (int i = 0; i < table.n_species(); ++i) {
    if (conc[i] == 0.0) continue;
    const SpeciesThermo& s = table.species[i];
    t_lo = std::max(t_lo, s.t_min() * (1.0 - table.extrapolation_margin));
    t_hi = std::min(t_hi, s.t_max() * (1.0 + table.extrapolation_margin));
  }
  if (!(t_lo < t_hi)) throw TemperatureOutOfRange("temperature_from_internal_energy: empty range");

  // Newton with the bracket maintained from actual evaluations; cv = du/dT > 0
  // makes u monotone. The tolerance couples the target with the thermal
  // energy scale cv T so near-zero u_target stays well-posed.
  double T = std::clamp(T_guess, t_lo, t_hi);
  double lo = t_lo, hi = t_hi;
  for (int it = 0; it < max_iter; ++it) {
    const MixtureProps p = mixture_properties(table, T, conc);
    const double f = p.u - u_target;
    if (std::abs(f) <= rel_tol * std::max(std::abs(u_target), p.cv * T)) return T;
    if (f > 0.0) {
      hi = T;
    } else {
      lo = T;
    }
    double T_new = T - f / p.cv;
    if (!(T_new > lo) || !(T_new < hi)) T_new = 0.5 * (lo + hi);
    T = T_new;
  }
  // Newton did not converge: decide between an unreachable target and a
  // genuine convergence failure, then fall back to plain bisection.
  {
    const MixtureProps plo = mixture_properties(table, t_lo, conc);
    const MixtureProps phi = mixture_properties(table, t_hi, conc);
    const double slack = rel_tol * std::max({std::abs(u_target), plo.cv * t_lo, phi.cv * t_hi});
    if (u_target < plo.u - slack || u_target > phi.u + slack) {
      throw TemperatureOutOfRange("temperature_from_internal_energy: u outside achievable bracket");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const MixtureProps p = mixture_properties(table, mid, conc);
    const double f = p.u - u_target;
    if (std::abs(f) <= rel_tol * std::max(std::abs(u_target), p.cv * mid) ||
        hi - lo < 1e-13 * std::max(1.0, mid)) {
      return mid;
    }
    if (f > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw NoConvergence("temperature_from_internal_energy: no convergence");
}

double total_energy_density(const ThermoTable& table, double momentum, double P,
                            std::span<const double> conc) {
  const double T = temperature_from_pressure(table, P, conc);
  const MixtureProps p = mixture_properties(table, T, conc);
  const double v = momentum / p.rho;
  return p.rho * p.u + 0.5 * momentum * v;
}

void energy_state_derivative(const ThermoTable& table, double momentum, double P,
                             std::span<const double> conc, std::span<double> w) {
  const double R0 = table.gas_constant;
  double sum_c = 0.0, rho = 0.0;
  for (int i = 0; i < table.n_species(); ++i) {
    sum_c += conc[i];
    rho += table.species[i].molar_mass * conc[i];
  }
  if (!(rho > 0.0) || !(sum_c > 0.0)) throw VacuumState("energy_state_derivative: vacuum state");
  const double T = P / (R0 * sum_c);
  const double v = momentum / rho;

  // Species internal energies are needed for every slot of w, including
  // zero-concentration species; cv contributions come only from present ones.
  double rho_cv = 0.0;
  for (int i = 0; i < table.n_species(); ++i) {
    const SpeciesThermo& s = table.species[i];
    const SpeciesProps sp = species_properties(s, T, R0, table.extrapolation_margin);
    w[2 + i] = s.molar_mass * sp.u;
    if (conc[i] != 0.0) rho_cv += s.molar_mass * conc[i] * (sp.cp - R0 / s.molar_mass);
  }

  w[0] = v;
  w[1] = rho_cv / (R0 * sum_c);
  const double pressure_pull = rho_cv * P / (R0 * sum_c * sum_c);
  const double half_kinetic = 0.5 * v * v;
  for (int i = 0; i < table.n_species(); ++i) {
    w[2 + i] -= pressure_pull + table.species[i].molar_mass * half_kinetic;
  }
}

void correction_variables(const ThermoTable& table, double momentum, double P,
                          std::span<const double> conc, std::span<const double> w,
                          std::span<double> z) {
  double rho = 0.0;
  for (int i = 0; i < table.n_species(); ++i) rho += table.species[i].molar_mass * conc[i];
  const double v = momentum / rho;
  double weighted = 0.0;
  for (int i = 0; i < table.n_species(); ++i) {
    weighted += table.species[i].molar_mass * w[2 + i];
    z[2 + i] = w[2 + i];
  }
  z[0] = v * weighted;
  z[1] = P;
}

} // namespace dgmc
