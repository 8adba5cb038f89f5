/// @file test_corrections.cpp
/// @brief Elementwise correction terms: conservativity, the energy
///        constraint, tolerance zeroing, masking, equilibrium structure, and
///        uniform-element detection.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corrections.hpp"
#include "mesh_basis.hpp"
#include "physics_flux.hpp"
#include "thermo_parser.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace dgmc;

namespace {

ThermoTable si_pair() {
  const ThermoDatabase db = load_thermo_file(std::string(DGMC_DATA_DIR) + "/therm.dat");
  ThermoTable t;
  t.species = {db.lookup("N2"), db.lookup("NC12H26")};
  return t;
}

CorrectionConfig config_for(CorrectionVariant v) {
  CorrectionConfig cfg;
  cfg.variant = v;
  cfg.zero_species_masking = (v == CorrectionVariant::modified);
  return cfg;
}

std::vector<double> denom_scales(const NormalizationRefs& refs, CorrectionVariant v, int m) {
  std::vector<double> s(m);
  for (int c = 0; c < m; ++c) {
    s[c] = (v == CorrectionVariant::modified) ? refs.w_scale(c) * refs.z_scale(c)
                                              : refs.w_scale(c) * refs.w_scale(c);
  }
  return s;
}

} // namespace

TEST_CASE("energy consistency error is the flux-minus-work formula") {
  const double w_hat[] = {1.0, 2.0, 3.0, -1.0};
  const double residual[] = {0.5, 0.25, -2.0, 4.0};
  // n_b = 2, m = 2: sum = 1*0.5 + 2*0.25 + 3*(-2) + (-1)*4 = -9
  CHECK(energy_consistency_error(w_hat, residual, 2, 2, 10.0) == doctest::Approx(19.0));
}

TEST_CASE("constant auxiliary coefficients zero the correction") {
  const NormalizationRefs refs;
  const int n_b = 4, m = 4;
  std::vector<double> w_hat(n_b * m, 0.7), z_hat(n_b * m, -0.2), residual(n_b * m, 1.0);
  const std::vector<double> r0 = residual;
  for (auto variant : {CorrectionVariant::original, CorrectionVariant::modified}) {
    const auto scales = denom_scales(refs, variant, m);
    const ElementCorrection ec =
        apply_elementwise_correction(w_hat, z_hat, 123.0, n_b, m, config_for(variant), scales,
                                     {}, residual);
    CHECK_FALSE(ec.applied);
    CHECK(ec.alpha == 0.0);
    for (int k = 0; k < n_b * m; ++k) CHECK(residual[k] == r0[k]);
  }
}

TEST_CASE("original variant enforces the energy constraint on random data") {
  const NormalizationRefs refs = NormalizationRefs::nondimensional();
  const int n_b = 5, m = 4;
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const auto scales = denom_scales(refs, CorrectionVariant::original, m);

  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> w_hat(n_b * m), residual(n_b * m);
    for (auto& v : w_hat) v = dist(rng);
    for (auto& v : residual) v = dist(rng);
    const double surface_flux = dist(rng) * 10.0;
    const double E = energy_consistency_error(w_hat, residual, n_b, m, surface_flux);

    std::vector<double> corrected = residual;
    const ElementCorrection ec = apply_elementwise_correction(
        w_hat, w_hat, E, n_b, m, config_for(CorrectionVariant::original), scales, {}, corrected);
    REQUIRE(ec.applied);

    // conservativity: the added correction sums to zero componentwise
    for (int c = 0; c < m; ++c) {
      double sum = 0.0, mag = 0.0;
      for (int k = 0; k < n_b; ++k) {
        sum += corrected[k * m + c] - residual[k * m + c];
        mag += std::abs(corrected[k * m + c] - residual[k * m + c]);
      }
      CHECK(std::abs(sum) <= 1e-12 * std::max(mag, 1e-30));
    }

    // constraint: sum_k w_k . R_k equals the surface energy flux
    double lhs = 0.0, mag = 0.0;
    for (int k = 0; k < n_b * m; ++k) {
      lhs += w_hat[k] * corrected[k];
      mag += std::abs(w_hat[k] * corrected[k]);
    }
    CHECK(std::abs(lhs - surface_flux) <= 1e-12 * std::max({mag, std::abs(surface_flux), 1.0}));
  }
}

TEST_CASE("modified variant at equilibrium: pressure slot untouched, velocity combination zero") {
  const ThermoTable t = si_pair();
  const NormalizationRefs refs;
  const int m = 4;
  const double P0 = 6.0e6, v0 = 600.0;
  std::mt19937 rng(8888);
  std::uniform_real_distribution<double> conc(150.0, 900.0); // T in range at 6 MPa
  const auto scales = denom_scales(refs, CorrectionVariant::modified, m);

  const int n_b = 4;
  std::vector<double> w_hat(n_b * m), z_hat(n_b * m), residual(n_b * m, 0.0);
  std::vector<double> rho(n_b);
  for (int k = 0; k < n_b; ++k) {
    double y[4] = {0.0, P0, conc(rng), conc(rng)};
    rho[k] = t.species[0].molar_mass * y[2] + t.species[1].molar_mass * y[3];
    y[0] = rho[k] * v0;
    energy_state_derivative(t, y[0], y[1], {y + 2, 2}, {w_hat.data() + k * m, 4});
    correction_variables(t, y[0], y[1], {y + 2, 2}, {w_hat.data() + k * m, 4},
                         {z_hat.data() + k * m, 4});
  }
  const ElementCorrection ec = apply_elementwise_correction(
      w_hat, z_hat, 1.0e6, n_b, m, config_for(CorrectionVariant::modified), scales, {}, residual);
  REQUIRE(ec.applied);
  CHECK_FALSE(ec.negative_denominator); // nonnegative closed form at equilibrium

  for (int k = 0; k < n_b; ++k) {
    CHECK(residual[k * m + StateLayout::zeta] == 0.0); // z_P = P0 for every node
    const double r_mom = residual[k * m + 0];
    const double r_mass = t.species[0].molar_mass * residual[k * m + 2] +
                          t.species[1].molar_mass * residual[k * m + 3];
    // velocity evolution: (1/rho) r_mom - (v0/rho) sum W_i r_Ci = 0
    const double combo = (r_mom - v0 * r_mass) / rho[k];
    const double scale = std::max(std::abs(r_mom), std::abs(v0 * r_mass)) / rho[k];
    CHECK(std::abs(combo) <= 1e-13 * std::max(scale, 1e-30));
  }
}

TEST_CASE("modified variant denominator at equilibrium equals the species-slot closed form") {
  const ThermoTable t = si_pair();
  const NormalizationRefs refs = NormalizationRefs::nondimensional();
  const int m = 4, n_b = 3;
  const double P0 = 2.0e6, v0 = 150.0;
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> conc(80.0, 300.0); // T in range at 2 MPa

  std::vector<double> w_hat(n_b * m), z_hat(n_b * m);
  for (int k = 0; k < n_b; ++k) {
    double y[4] = {0.0, P0, conc(rng), conc(rng)};
    y[0] = (t.species[0].molar_mass * y[2] + t.species[1].molar_mass * y[3]) * v0;
    energy_state_derivative(t, y[0], y[1], {y + 2, 2}, {w_hat.data() + k * m, 4});
    correction_variables(t, y[0], y[1], {y + 2, 2}, {w_hat.data() + k * m, 4},
                         {z_hat.data() + k * m, 4});
  }
  double wm[4]{}, zm[4]{};
  coefficient_average(w_hat, n_b, m, wm);
  coefficient_average(z_hat, n_b, m, zm);
  double den = 0.0, closed = 0.0;
  for (int k = 0; k < n_b; ++k) {
    for (int c = 0; c < m; ++c) {
      den += (w_hat[k * m + c] - wm[c]) * (z_hat[k * m + c] - zm[c]);
    }
    for (int i = 0; i < 2; ++i) {
      const double dw = w_hat[k * m + 2 + i] - wm[2 + i];
      closed += dw * dw;
    }
  }
  CHECK(den == doctest::Approx(closed).epsilon(1e-10));
  CHECK(den >= 0.0);
  (void)refs;
}

TEST_CASE("masked species slots receive no correction and the constraint still holds") {
  const NormalizationRefs refs = NormalizationRefs::nondimensional();
  const int n_b = 4, m = 5; // three species
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  const auto scales = denom_scales(refs, CorrectionVariant::modified, m);

  std::vector<double> w_hat(n_b * m), z_hat(n_b * m), residual(n_b * m);
  for (auto& v : w_hat) v = dist(rng);
  for (auto& v : z_hat) v = dist(rng);
  for (auto& v : residual) v = dist(rng);
  // the masked slot's residual is zero, as it is for an all-zero species
  for (int k = 0; k < n_b; ++k) residual[k * m + 4] = 0.0;

  const double surface_flux = 3.7;
  const double E = energy_consistency_error(w_hat, residual, n_b, m, surface_flux);
  bool masked[5] = {false, false, false, false, true};

  std::vector<double> corrected = residual;
  const ElementCorrection ec =
      apply_elementwise_correction(w_hat, z_hat, E, n_b, m, config_for(CorrectionVariant::modified),
                                   scales, {masked, 5}, corrected);
  REQUIRE(ec.applied);
  for (int k = 0; k < n_b; ++k) CHECK(corrected[k * m + 4] == 0.0);

  double lhs = 0.0, mag = 0.0;
  for (int k = 0; k < n_b * m; ++k) {
    lhs += w_hat[k] * corrected[k];
    mag += std::abs(w_hat[k] * corrected[k]);
  }
  CHECK(std::abs(lhs - surface_flux) <= 1e-12 * std::max(mag, 1.0));
}

TEST_CASE("negative scaled denominator zeroes alpha and is flagged") {
  const NormalizationRefs refs = NormalizationRefs::nondimensional();
  const int n_b = 2, m = 3;
  // constructed so sum dw . dz < 0
  std::vector<double> w_hat = {1.0, 0.0, 0.0, -1.0, 0.0, 0.0};
  std::vector<double> z_hat = {-2.0, 0.0, 0.0, 2.0, 0.0, 0.0};
  std::vector<double> residual(n_b * m, 0.25);
  const std::vector<double> r0 = residual;
  const auto scales = denom_scales(refs, CorrectionVariant::modified, m);
  const ElementCorrection ec = apply_elementwise_correction(
      w_hat, z_hat, 5.0, n_b, m, config_for(CorrectionVariant::modified), scales, {}, residual);
  CHECK_FALSE(ec.applied);
  CHECK(ec.negative_denominator);
  for (int k = 0; k < n_b * m; ++k) CHECK(residual[k] == r0[k]);
}

TEST_CASE("uniform element detection") {
  const int n_b = 4, m = 2;
  const double floor_c[2] = {1.0, 1.0};
  std::vector<double> coeff(n_b * m);
  for (int k = 0; k < n_b; ++k) {
    coeff[k * m + 0] = 3.0;
    coeff[k * m + 1] = -0.5;
  }
  CHECK(is_uniform_element(coeff, n_b, m, floor_c, 1e-12));

  std::vector<double> tiny = coeff;
  tiny[2] += 3.0e-15; // below tolerance relative to (|mean| + floor)
  CHECK(is_uniform_element(tiny, n_b, m, floor_c, 1e-12));

  std::vector<double> big = coeff;
  big[2] += 3.0e-3;
  CHECK_FALSE(is_uniform_element(big, n_b, m, floor_c, 1e-12));
}
