/// @file run_config.hpp
/// @brief Run configuration: the key-value config file schema shared by the
///        CLI and the library entry points, with field validation.

#pragma once

#include "state.hpp"
#include "time_integrator.hpp"

#include <string>

namespace dgmc {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// One simulation run. Negative / empty values mean "use the case default".
struct RunConfig {
  std::string case_name = "bubble600";
  Scheme scheme = Scheme::P3;
  int degree = -1;
  int elements = -1;
  double cfl = -1.0;
  double dt = 0.0;       // fixed step when > 0 (overrides cfl)
  double periods = -1.0; // horizon in advection periods
  double t_end = -1.0;   // explicit horizon (overrides periods when >= 0)
  double sample_every_periods = -1.0;
  std::string out_dir;     // empty: no files written
  std::string label;       // output file stem; derived when empty
  std::string thermo_path; // empty: resolve the case default data file
  TimeScheme integrator = TimeScheme::ssprk3;
  double alpha_tol = 1e-7;
  double beta_tol = 1e-6;
  double uniform_tol = 1e-12;
  double t_ref = 298.15; // normalization reference temperature (SI cases)
  long long max_steps = 200000000;
  long long seed = 0; // recorded in summaries; reserved for randomized tooling
};

/// Applies "key = value" assignments from a config file. Unknown keys raise
/// ConfigError naming the key.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Applies one assignment (the CLI override path shares this).
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Validates cross-field consistency (scheme/formulation, positive sizes).
void validate(const RunConfig& cfg);

} // namespace dgmc
