/// @file runner.hpp
/// @brief Simulation driver: executes configured runs and sweeps, samples
///        diagnostics, and writes the CSV time series / JSON summaries.

#pragma once

#include "cases.hpp"
#include "diagnostics.hpp"
#include "run_config.hpp"

#include <string>
#include <vector>

namespace dgmc {

inline constexpr const char* kOutputSchemaVersion = "1";

struct TimeSample {
  double t = 0.0;
  double pressure_error_pct = 0.0;
  double global_energy = 0.0;
  double conservation_error_pct = 0.0;
};

struct RunReport {
  RunConfig config;           // resolved configuration (defaults filled in)
  bool diverged = false;
  double divergence_time = -1.0;
  std::string divergence_reason;
  double final_time = 0.0;
  long long steps = 0;
  double wall_seconds = 0.0;
  double tau = 0.0; // advection period

  std::vector<TimeSample> series;
  double max_pressure_error_pct = 0.0;
  double energy_initial = 0.0;
  double energy_final = 0.0;
  double conservation_error_pct = 0.0;
  std::vector<double> max_abs_conc; // per species, over every accepted step

  bool has_l2 = false;
  L2Errors l2;

  EvalStats stats;
  GlobalSolution final_state; // last valid state (pre-divergence when diverged)

  int exit_code() const { return diverged ? 2 : 0; }
};

/// Executes one run. Throws ConfigError / CaseError / ParseError for setup
/// problems; solver divergence is reported in the result, not thrown.
RunReport run_case(const RunConfig& cfg);

struct SweepPoint {
  double value = 0.0;     // axis value (N, dt) ; scheme index for scheme axis
  std::string label;      // printable axis value
  RunReport report;
};

struct SweepReport {
  std::string axis;
  std::vector<SweepPoint> points;
  std::vector<double> errors;      // metric per completed point
  std::vector<double> sizes;       // h or dt per completed point
  std::vector<double> rates;       // between consecutive completed points
  double mean_rate = 0.0;
  std::string metric;              // "l2_combined" or "conservation_error_pct"
};

/// Runs the base configuration across one axis: "grid" (values are element
/// counts), "timestep" (values are dt), or "scheme" (values are scheme names,
/// given via labels). Diverged points are recorded; rates use completed
/// points only.
SweepReport run_sweep(const RunConfig& base, const std::string& axis,
                      const std::vector<std::string>& values);

/// Resolves a thermo data file: explicit path, then $DGMC_DATA_DIR, then
/// ./data/, then the build-time source data directory.
std::string resolve_thermo_path(const std::string& explicit_path, const std::string& filename);

std::string write_run_csv(const RunReport& report);    // RFC-4180 text
std::string write_run_json(const RunReport& report);   // flat summary object
std::string write_sweep_csv(const SweepReport& report);
std::string write_sweep_json(const SweepReport& report);

/// Writes report files under cfg.out_dir (created if needed) and returns the
/// file stem used.
std::string emit_run_files(const RunReport& report);
std::string emit_sweep_files(const SweepReport& report, const RunConfig& base);

} // namespace dgmc
