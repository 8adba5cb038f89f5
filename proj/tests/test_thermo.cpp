/// @file test_thermo.cpp
/// @brief Thermally-perfect-gas property tests: NASA-7 evaluation, EOS
///        inversions, mixture rules, and the total-energy derivative vector
///        against an independent finite-difference oracle.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cases.hpp"
#include "thermo.hpp"
#include "thermo_parser.hpp"

#include <cmath>
#include <random>

using namespace dgmc;

namespace {

// Fictitious constant-cp species (nondimensional, R0 = 1): W cp / R0 = cp_over_R.
SpeciesThermo constant_cp_species(const std::string& name, double W, double cp_over_R) {
  SpeciesThermo s;
  s.name = name;
  s.molar_mass = W;
  ThermoInterval iv;
  iv.t_low = 1.0;
  iv.t_high = 1e6;
  iv.a = {cp_over_R, 0, 0, 0, 0, 0, 0};
  s.intervals = {iv};
  return s;
}

ThermoTable nondim_table(std::vector<SpeciesThermo> species) {
  ThermoTable t;
  t.gas_constant = 1.0;
  t.species = std::move(species);
  return t;
}

ThermoTable load_si_table(std::vector<std::string> names) {
  const ThermoDatabase db = load_thermo_file(std::string(DGMC_DATA_DIR) + "/therm.dat");
  ThermoTable t;
  for (const auto& n : names) t.species.push_back(db.lookup(n));
  return t;
}

// Independent NASA-7 evaluation from a literal coefficient row (test oracle).
double cp_over_R_oracle(const std::array<double, 7>& a, double T) {
  return a[0] + a[1] * T + a[2] * T * T + a[3] * T * T * T + a[4] * T * T * T * T;
}

} // namespace

TEST_CASE("fictitious species: molar cp/h/u ratios at T = 2") {
  const SpeciesThermo s = constant_cp_species("SP1", 5.0, 3.5);
  const SpeciesProps p = species_properties(s, 2.0, 1.0);
  CHECK(s.molar_mass * p.cp / 1.0 == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(s.molar_mass * p.h == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(s.molar_mass * p.u == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("constant-coefficient polynomial: cp independent of T") {
  const SpeciesThermo s = constant_cp_species("SP1", 5.0, 3.5);
  const double cp1 = species_properties(s, 2.0, 1.0).cp;
  const double cp2 = species_properties(s, 700.0, 1.0).cp;
  CHECK(cp1 == cp2);
}

TEST_CASE("N2 cp at 300 K is within 1% of 1040 J/(kg K)") {
  const ThermoTable t = load_si_table({"N2"});
  const SpeciesProps p = species_properties(t.species[0], 300.0, kUniversalGasConstant);
  CHECK(std::abs(p.cp - 1040.0) / 1040.0 < 0.01);

  // cross-check the parsed low-T row against the published coefficients
  const std::array<double, 7> gri_low = {3.29867700E+00, 1.40824040E-03, -3.96322200E-06,
                                         5.64151500E-09, -2.44485400E-12, -1.02089990E+03,
                                         3.95037200E+00};
  const double R = kUniversalGasConstant / t.species[0].molar_mass;
  CHECK(p.cp == doctest::Approx(R * cp_over_R_oracle(gri_low, 300.0)).epsilon(1e-12));
}

TEST_CASE("temperature range: margin extrapolation and hard error") {
  const ThermoTable t = load_si_table({"N2"});
  const SpeciesThermo& n2 = t.species[0];
  CHECK_NOTHROW(species_properties(n2, 280.0, kUniversalGasConstant, 0.1)); // within 10% margin
  CHECK(temperature_is_extrapolated(n2, 280.0));
  CHECK_FALSE(temperature_is_extrapolated(n2, 400.0));
  CHECK_THROWS_AS(species_properties(n2, 200.0, kUniversalGasConstant, 0.1),
                  TemperatureOutOfRange);
  CHECK_THROWS_AS(species_properties(n2, 6000.0, kUniversalGasConstant, 0.1),
                  TemperatureOutOfRange);
}

TEST_CASE("mixture: single constant-cp species has gamma = 1.4 exactly") {
  const ThermoTable t = nondim_table({constant_cp_species("SP1", 5.0, 3.5)});
  const double conc[] = {0.8};
  const MixtureProps p = mixture_properties(t, 2.0, conc);
  CHECK(p.gamma == doctest::Approx(1.4).epsilon(1e-15));
}

TEST_CASE("mixture: 50/50 by mass lies strictly between the pure gammas") {
  const ThermoTable t = nondim_table(
      {constant_cp_species("SP1", 5.0, 3.5), constant_cp_species("SP2", 5.0, 2.491)});
  // equal mass fractions with equal molar masses: equal concentrations
  const double conc[] = {0.5, 0.5};
  const double g = mixture_properties(t, 2.0, conc).gamma;
  const double g1 = 3.5 / 2.5;
  const double g2 = 2.491 / 1.491; // smaller cp, larger gamma
  CHECK(g > std::min(g1, g2));
  CHECK(g < std::max(g1, g2));
}

TEST_CASE("mixture: N2/n-dodecane cv matches the species-sum oracle") {
  const ThermoTable t = load_si_table({"N2", "NC12H26"});
  const double T = 631.5;
  // Y_dodecane = 0.5: rho_i equal for both species
  const double rho = 10.0;
  const double conc[] = {0.5 * rho / t.species[0].molar_mass,
                         0.5 * rho / t.species[1].molar_mass};
  const MixtureProps p = mixture_properties(t, T, conc);

  double rho_cv = 0.0;
  for (int i = 0; i < 2; ++i) {
    const SpeciesProps sp = species_properties(t.species[i], T, kUniversalGasConstant);
    const double R_i = kUniversalGasConstant / t.species[i].molar_mass;
    rho_cv += t.species[i].molar_mass * conc[i] * (sp.cp - R_i);
  }
  CHECK(p.cv == doctest::Approx(rho_cv / rho).epsilon(1e-12));
}

TEST_CASE("mixture: pure-species limit recovers species values") {
  const ThermoTable t = load_si_table({"N2", "NC12H26"});
  const double conc[] = {40.0, 0.0};
  const MixtureProps p = mixture_properties(t, 500.0, conc);
  const SpeciesProps sp = species_properties(t.species[0], 500.0, kUniversalGasConstant);
  const double R_n2 = kUniversalGasConstant / t.species[0].molar_mass;
  CHECK(p.cp == doctest::Approx(sp.cp).epsilon(1e-14));
  CHECK(p.cv == doctest::Approx(sp.cp - R_n2).epsilon(1e-14));
  CHECK(p.R == doctest::Approx(R_n2).epsilon(1e-14));
}

TEST_CASE("ideal-gas law round trips") {
  const ThermoTable t = load_si_table({"N2"});
  const double T0 = 350.0, P0 = 2.0e5;
  const double conc[] = {P0 / (kUniversalGasConstant * T0)};
  CHECK(pressure_from_temperature(t, T0, conc) == doctest::Approx(P0).epsilon(1e-15));
  CHECK(temperature_from_pressure(t, P0, conc) == doctest::Approx(T0).epsilon(1e-14));

  const double conc2[] = {2.0 * conc[0]};
  CHECK(pressure_from_temperature(t, T0, conc2) == doctest::Approx(2.0 * P0).epsilon(1e-15));
  // scaling P and sum C together leaves T fixed
  CHECK(temperature_from_pressure(t, 2.0 * P0, conc2) == doctest::Approx(T0).epsilon(1e-14));
}

TEST_CASE("gaussian-wave state at x = 0 satisfies P = 2") {
  // rho = 5, Y1 = 0.5, W = 5 for both species: sum C = 1, so T = P. The EOS
  // must return P = 2 at the temperature recovered from (P, C).
  const ThermoTable t = nondim_table(
      {constant_cp_species("SP1", 5.0, 3.5), constant_cp_species("SP2", 5.0, 2.491)});
  const double conc[] = {0.5, 0.5};
  const double T = temperature_from_pressure(t, 2.0, conc);
  CHECK(pressure_from_temperature(t, T, conc) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(T == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("bubble far field: concentration from P = 6 MPa at 900 K inverts back") {
  const ThermoTable t = load_si_table({"N2"});
  const double conc[] = {6.0e6 / (kUniversalGasConstant * 900.0)};
  CHECK(temperature_from_pressure(t, 6.0e6, conc) == doctest::Approx(900.0).epsilon(1e-14));
}

TEST_CASE("temperature from internal energy: forward-then-invert") {
  const ThermoTable t = load_si_table({"N2"});
  const double conc[] = {30.0};
  const double u_target = mixture_properties(t, 500.0, conc).u;
  const double T = temperature_from_internal_energy(t, u_target, conc, 1200.0);
  CHECK(T == doctest::Approx(500.0).epsilon(1e-8 / 500.0));
}

TEST_CASE("temperature from internal energy: constant-cp closed form") {
  ThermoTable t = nondim_table({constant_cp_species("SP1", 5.0, 3.5)});
  const double conc[] = {0.7};
  // u = 2.5 R_i T with a zero enthalpy datum, so T = u W / 2.5
  const double u_target = 2.5 * (1.0 / 5.0) * 3.25;
  const double T = temperature_from_internal_energy(t, u_target, conc, 100.0);
  CHECK(T == doctest::Approx(3.25).epsilon(1e-12));
}

TEST_CASE("temperature from internal energy: bracket violation throws") {
  const ThermoTable t = load_si_table({"N2"});
  const double conc[] = {30.0};
  const double u_low = mixture_properties(t, t.species[0].t_min() * 0.9, conc).u;
  CHECK_THROWS_AS(
      temperature_from_internal_energy(t, u_low - std::abs(u_low) * 0.5, conc, 400.0),
      TemperatureOutOfRange);
}

TEST_CASE("total energy density: calorically perfect limit is P/(gamma-1)") {
  const ThermoTable t = nondim_table({constant_cp_species("SP1", 5.0, 3.5)});
  const double conc[] = {0.8};
  const double P = 1.7;
  // zero velocity, zero enthalpy datum: rho u = P / (gamma - 1) = 2.5 P
  CHECK(total_energy_density(t, 0.0, P, conc) == doctest::Approx(2.5 * P).epsilon(1e-14));
}

TEST_CASE("total energy density: pressure <-> energy round trip") {
  const ThermoTable t = load_si_table({"N2", "NC12H26"});
  const double conc[] = {200.0, 20.0}; // T = P/(R0 sum C) ~ 1640 K, in range
  const double P = 3.0e6;
  const double rho = t.species[0].molar_mass * conc[0] + t.species[1].molar_mass * conc[1];
  const double mom = rho * 250.0;
  const double rho_et = total_energy_density(t, mom, P, conc);
  const double u_mix = (rho_et - 0.5 * mom * mom / rho) / rho;
  const double T = temperature_from_internal_energy(t, u_mix, conc, 600.0);
  const double P_back = pressure_from_temperature(t, T, conc);
  CHECK(P_back == doctest::Approx(P).epsilon(1e-10));
}

TEST_CASE("total energy density: kinetic term scales with velocity squared") {
  const ThermoTable t = load_si_table({"N2"});
  const double conc[] = {40.0};
  const double rho = t.species[0].molar_mass * conc[0];
  const double P = 1.0e6;
  const double v = 120.0;
  const double e1 = total_energy_density(t, rho * v, P, conc);
  const double e2 = total_energy_density(t, rho * 2.0 * v, P, conc);
  CHECK(e2 - e1 == doctest::Approx(1.5 * rho * v * v).epsilon(1e-11));
}

TEST_CASE("energy derivative: w_P = 2.5 for a gamma = 1.4 gas") {
  const ThermoTable t = nondim_table({constant_cp_species("SP1", 5.0, 3.5)});
  const double y[] = {0.6, 1.3, 0.9}; // momentum, P, C
  double w[3];
  energy_state_derivative(t, y[0], y[1], {y + 2, 1}, w);
  CHECK(w[1] == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("energy derivative: at rest the momentum slot vanishes") {
  const ThermoTable t = load_si_table({"N2", "NC12H26"});
  const double conc[] = {300.0, 50.0}; // T ~ 690 K
  double w[4];
  energy_state_derivative(t, 0.0, 2.0e6, conc, w);
  CHECK(w[0] == 0.0);
}

TEST_CASE("energy derivative matches central finite differences (1000 states)") {
  const ThermoTable t = load_si_table({"N2", "NC12H26"});
  const NormalizationRefs refs; // SI reference scales
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> conc_dist(1.0, 60.0);
  std::uniform_real_distribution<double> T_dist(420.0, 2500.0);
  std::uniform_real_distribution<double> v_dist(-600.0, 600.0);

  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    double y[4];
    y[2] = conc_dist(rng);
    y[3] = conc_dist(rng);
    const double T = T_dist(rng);
    y[1] = kUniversalGasConstant * T * (y[2] + y[3]);
    const double rho = t.species[0].molar_mass * y[2] + t.species[1].molar_mass * y[3];
    y[0] = rho * v_dist(rng);

    double w[4];
    energy_state_derivative(t, y[0], y[1], {y + 2, 2}, w);
    // positivity of d(rho e_t)/dP for every valid state
    CHECK(w[1] > 0.0);

    // relative step and relative agreement taken in the normalized variables,
    // so mixed physical scales and zero crossings don't distort the check
    for (int c = 0; c < 4; ++c) {
      const double h = 1e-6 * refs.state_scale(c);
      double yp[4], ym[4];
      for (int k = 0; k < 4; ++k) yp[k] = ym[k] = y[k];
      yp[c] += h;
      ym[c] -= h;
      const double ep = total_energy_density(t, yp[0], yp[1], {yp + 2, 2});
      const double em = total_energy_density(t, ym[0], ym[1], {ym + 2, 2});
      const double fd = (ep - em) / (2.0 * h);
      const double rel = std::abs(fd - w[c]) / std::max(std::abs(w[c]), refs.w_scale(c));
      worst = std::max(worst, rel);
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("correction variables: slot structure") {
  const ThermoTable t = load_si_table({"N2", "NC12H26"});
  const double conc[] = {300.0, 50.0}; // T ~ 690 K
  const double rho = t.species[0].molar_mass * conc[0] + t.species[1].molar_mass * conc[1];
  const double P = 2.0e6;
  double y0 = rho * 300.0;
  double w[4], z[4];
  energy_state_derivative(t, y0, P, conc, w);
  correction_variables(t, y0, P, conc, w, z);

  CHECK(z[2] == w[2]);
  CHECK(z[3] == w[3]);
  CHECK(z[1] == P); // bit-for-bit copy
  const double expected =
      300.0 * (t.species[0].molar_mass * w[2] + t.species[1].molar_mass * w[3]);
  CHECK(z[0] == doctest::Approx(expected).epsilon(1e-14));

  // v = 0 zeroes the momentum slot
  energy_state_derivative(t, 0.0, P, conc, w);
  correction_variables(t, 0.0, P, conc, w, z);
  CHECK(z[0] == 0.0);
}

TEST_CASE("vacuum states are rejected") {
  const ThermoTable t = load_si_table({"N2"});
  const double conc[] = {0.0};
  CHECK_THROWS_AS(mixture_properties(t, 300.0, conc), VacuumState);
  CHECK_THROWS_AS(temperature_from_pressure(t, 1e5, conc), VacuumState);
}
