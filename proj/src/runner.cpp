#include "runner.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace dgmc {

namespace {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct RunSetup {
  ThermoTable table;
  CaseSpec cs;
  Discretization disc;
  SchemeConfig scheme_cfg;
  NormalizationRefs refs;
  double t_end = 0.0;
  double sample_dt = 0.0;
};

RunSetup prepare(const RunConfig& in, RunConfig& resolved) {
  validate(in);
  resolved = in;

  const CaseInfo info = case_info(in.case_name);
  const std::string thermo_path = resolve_thermo_path(in.thermo_path, info.default_thermo_file);
  resolved.thermo_path = thermo_path;
  const ThermoDatabase db = load_thermo_file(thermo_path);

  RunSetup s;
  s.table = make_case_table(db, info);
  s.cs = build_case(in.case_name, s.table);
  s.refs = s.cs.refs;
  if (s.refs.R0 != 1.0) s.refs.T_r = in.t_ref;

  if (resolved.degree < 0) resolved.degree = s.cs.default_degree;
  if (resolved.elements < 0) resolved.elements = s.cs.default_elements;
  if (resolved.cfl < 0.0 && resolved.dt == 0.0) resolved.cfl = s.cs.default_cfl;
  if (resolved.periods < 0.0 && resolved.t_end < 0.0) resolved.periods = s.cs.default_periods;
  if (resolved.sample_every_periods < 0.0) {
    resolved.sample_every_periods = (in.case_name == "bubble1") ? 0.1 : 1.0;
  }

  s.scheme_cfg = SchemeConfig::make(in.scheme);
  s.scheme_cfg.correction.alpha_tol = in.alpha_tol;
  s.scheme_cfg.correction.beta_tol = in.beta_tol;
  s.scheme_cfg.correction.uniform_tol = in.uniform_tol;

  s.disc = build_discretization(resolved.elements, resolved.degree,
                                integration_mode_of(in.scheme), s.cs.x_left, s.cs.x_right);

  const double tau = s.cs.period();
  s.t_end = (resolved.t_end >= 0.0) ? resolved.t_end : resolved.periods * tau;
  s.sample_dt = resolved.sample_every_periods * tau;
  return s;
}

void track_max_conc(const GlobalSolution& sol, int ns, std::vector<double>& max_abs) {
  for (int e = 0; e < sol.n_elements; ++e) {
    for (int k = 0; k < sol.n_b; ++k) {
      const double* y = sol.node(e, k);
      for (int i = 0; i < ns; ++i) {
        max_abs[i] = std::max(max_abs[i], std::abs(y[2 + i]));
      }
    }
  }
}

} // namespace

std::string resolve_thermo_path(const std::string& explicit_path, const std::string& filename) {
  namespace fs = std::filesystem;
  if (!explicit_path.empty()) {
    if (!fs::exists(explicit_path)) {
      throw ConfigError("thermo file '" + explicit_path + "' does not exist");
    }
    return explicit_path;
  }
  std::vector<std::string> candidates;
  if (const char* env = std::getenv("DGMC_DATA_DIR")) {
    candidates.push_back(std::string(env) + "/" + filename);
  }
  candidates.push_back("data/" + filename);
#ifdef DGMC_SOURCE_DATA_DIR
  candidates.push_back(std::string(DGMC_SOURCE_DATA_DIR) + "/" + filename);
#endif
  for (const std::string& c : candidates) {
    if (fs::exists(c)) return c;
  }
  throw ConfigError("cannot locate thermo data file '" + filename +
                    "' (set --thermo or DGMC_DATA_DIR)");
}

RunReport run_case(const RunConfig& cfg) {
  RunReport rep;
  const RunSetup s = prepare(cfg, rep.config);
  const Formulation form = formulation_of(cfg.scheme);
  const int ns = s.table.n_species();
  rep.tau = s.cs.period();
  rep.max_abs_conc.assign(ns, 0.0);

  ResidualEvaluator eval(s.disc, s.table, s.scheme_cfg, s.refs);
  if (s.cs.source) eval.set_source(s.cs.source);

  GlobalSolution sol = initialize_solution(s.cs, s.disc, s.table, form);
  GlobalSolution stage, rhs;

  const double P0 = s.cs.background_pressure;
  rep.energy_initial = global_energy(s.disc, s.table, sol);

  auto sample = [&](double t) {
    TimeSample ts;
    ts.t = t;
    ts.global_energy = global_energy(s.disc, s.table, sol);
    ts.conservation_error_pct =
        energy_conservation_error_percent(ts.global_energy, rep.energy_initial);
    ts.pressure_error_pct =
        (P0 > 0.0) ? pressure_error_percent(s.disc, s.table, sol, P0) : 0.0;
    rep.series.push_back(ts);
    rep.max_pressure_error_pct = std::max(rep.max_pressure_error_pct, ts.pressure_error_pct);
  };

  const auto wall_start = std::chrono::steady_clock::now();
  sample(0.0);
  track_max_conc(sol, ns, rep.max_abs_conc);

  const double t_end = s.t_end;
  const bool fixed_dt = cfg.dt > 0.0;
  double next_sample = s.sample_dt;
  const double eps = 1e-12 * std::max(t_end, 1.0);

  GlobalSolution last_valid = sol;
  while (sol.time < t_end - eps && rep.steps < rep.config.max_steps) {
    try {
      double dt = fixed_dt ? cfg.dt : stable_timestep(eval, sol, rep.config.cfl);
      if (sol.time + dt > t_end) dt = t_end - sol.time;
      if (!fixed_dt && s.sample_dt > 0.0 && sol.time + dt > next_sample + eps) {
        dt = next_sample - sol.time; // land on the sampling grid
      }
      if (cfg.integrator == TimeScheme::ssprk3) {
        ssprk3_step(eval, sol, dt, stage, rhs);
      } else {
        forward_euler_step(eval, sol, dt, rhs);
      }
    } catch (const ThermoError& err) {
      rep.diverged = true;
      rep.divergence_reason = err.what();
    } catch (const NonFiniteState& err) {
      rep.diverged = true;
      rep.divergence_reason = err.what();
    }
    if (rep.diverged) {
      rep.divergence_time = last_valid.time;
      sol = last_valid;
      break;
    }
    ++rep.steps;
    last_valid = sol;
    track_max_conc(sol, ns, rep.max_abs_conc);
    if (s.sample_dt > 0.0 && sol.time >= next_sample - eps) {
      sample(sol.time);
      while (next_sample <= sol.time + eps) next_sample += s.sample_dt;
    }
  }

  const auto wall_end = std::chrono::steady_clock::now();
  rep.wall_seconds = std::chrono::duration<double>(wall_end - wall_start).count();
  rep.final_time = sol.time;
  if (rep.series.empty() || rep.series.back().t < sol.time - eps) sample(sol.time);

  rep.energy_final = global_energy(s.disc, s.table, sol);
  rep.conservation_error_pct =
      energy_conservation_error_percent(rep.energy_final, rep.energy_initial);

  if (!rep.diverged && s.cs.has_exact()) {
    rep.has_l2 = true;
    rep.l2 = normalized_l2_error(s.disc, sol, exact_sampler(s.cs, s.table, form, sol.time),
                                 s.refs);
  }
  rep.stats = eval.stats();
  rep.final_state = std::move(sol);

  if (!rep.config.out_dir.empty()) emit_run_files(rep);
  return rep;
}

SweepReport run_sweep(const RunConfig& base, const std::string& axis,
                      const std::vector<std::string>& values) {
  if (axis != "grid" && axis != "timestep" && axis != "scheme") {
    throw ConfigError("sweep axis must be grid|timestep|scheme, got '" + axis + "'");
  }
  if (values.size() < 2 && axis != "scheme") {
    throw ConfigError("sweep needs at least two axis values");
  }
  SweepReport sweep;
  sweep.axis = axis;
  sweep.metric = (axis == "timestep") ? "conservation_error_pct" : "l2_combined";

  for (const std::string& v : values) {
    RunConfig cfg = base;
    SweepPoint pt;
    pt.label = v;
    if (axis == "grid") {
      cfg.elements = static_cast<int>(std::stoll(v));
      pt.value = cfg.elements;
    } else if (axis == "timestep") {
      cfg.dt = std::stod(v);
      cfg.cfl = -1.0;
      pt.value = cfg.dt;
    } else {
      if (!scheme_from_string(v, cfg.scheme)) {
        throw ConfigError("sweep value '" + v + "' is not a scheme name");
      }
      pt.value = static_cast<double>(static_cast<int>(cfg.scheme));
    }
    cfg.out_dir.clear(); // per-point files are not written; the sweep aggregates
    pt.report = run_case(cfg);
    sweep.points.push_back(std::move(pt));
  }

  if (axis != "scheme") {
    for (const SweepPoint& pt : sweep.points) {
      if (pt.report.diverged) continue;
      if (axis == "grid") {
        if (!pt.report.has_l2) continue;
        sweep.errors.push_back(pt.report.l2.combined);
        sweep.sizes.push_back(1.0 / pt.value); // h proportional to 1/N
      } else {
        sweep.errors.push_back(pt.report.conservation_error_pct);
        sweep.sizes.push_back(pt.value);
      }
    }
    if (sweep.errors.size() >= 2) {
      bool positive = true;
      for (double e : sweep.errors) positive = positive && e > 0.0;
      if (positive) {
        sweep.rates = convergence_rates(sweep.errors, sweep.sizes);
        sweep.mean_rate = mean(sweep.rates);
      }
    }
  }
  if (!base.out_dir.empty()) emit_sweep_files(sweep, base);
  return sweep;
}

std::string write_run_csv(const RunReport& report) {
  std::string out = "t,pressure_error_pct,global_energy,conservation_error_pct\r\n";
  for (const TimeSample& ts : report.series) {
    out += format_g17(ts.t) + "," + format_g17(ts.pressure_error_pct) + "," +
           format_g17(ts.global_energy) + "," + format_g17(ts.conservation_error_pct) + "\r\n";
  }
  return out;
}

std::string write_run_json(const RunReport& report) {
  nlohmann::json j;
  j["schema_version"] = kOutputSchemaVersion;
  j["case"] = report.config.case_name;
  j["scheme"] = to_string(report.config.scheme);
  j["p"] = report.config.degree;
  j["N"] = report.config.elements;
  j["cfl"] = report.config.cfl;
  j["dt"] = report.config.dt;
  j["seed"] = report.config.seed;
  j["tau"] = report.tau;
  j["status"] = report.diverged ? "diverged" : "completed";
  j["divergence_time"] = report.divergence_time;
  j["final_time"] = report.final_time;
  j["steps"] = report.steps;
  j["wall_seconds"] = report.wall_seconds;
  j["max_pressure_error_pct"] = report.max_pressure_error_pct;
  j["conservation_error_pct"] = report.conservation_error_pct;
  j["energy_initial"] = report.energy_initial;
  j["energy_final"] = report.energy_final;
  j["max_constraint_violation"] = report.stats.max_constraint_violation;
  j["alpha_applied"] = report.stats.alpha_applied;
  j["alpha_zeroed"] = report.stats.alpha_zeroed;
  j["negative_denominators"] = report.stats.negative_denominators;
  j["face_corrections_applied"] = report.stats.face_corrections_applied;
  j["extrapolated_points"] = report.stats.extrapolated_points;
  if (report.has_l2) {
    j["l2_combined"] = report.l2.combined;
    for (std::size_t c = 0; c < report.l2.per_component.size(); ++c) {
      j["l2_component_" + std::to_string(c)] = report.l2.per_component[c];
    }
  }
  for (std::size_t i = 0; i < report.max_abs_conc.size(); ++i) {
    j["max_abs_conc_" + std::to_string(i)] = report.max_abs_conc[i];
  }
  return j.dump(2) + "\n";
}

std::string write_sweep_csv(const SweepReport& report) {
  std::string out = "axis_value,status,l2_combined,conservation_error_pct,"
                    "max_pressure_error_pct,steps\r\n";
  for (const SweepPoint& pt : report.points) {
    out += pt.label + "," + (pt.report.diverged ? "diverged" : "completed") + "," +
           (pt.report.has_l2 ? format_g17(pt.report.l2.combined) : "") + "," +
           format_g17(pt.report.conservation_error_pct) + "," +
           format_g17(pt.report.max_pressure_error_pct) + "," + std::to_string(pt.report.steps) +
           "\r\n";
  }
  return out;
}

std::string write_sweep_json(const SweepReport& report) {
  nlohmann::json j;
  j["schema_version"] = kOutputSchemaVersion;
  j["axis"] = report.axis;
  j["metric"] = report.metric;
  j["errors"] = report.errors;
  j["sizes"] = report.sizes;
  j["rates"] = report.rates;
  j["mean_rate"] = report.mean_rate;
  nlohmann::json pts = nlohmann::json::array();
  for (const SweepPoint& pt : report.points) {
    nlohmann::json p;
    p["value"] = pt.label;
    p["status"] = pt.report.diverged ? "diverged" : "completed";
    p["divergence_time"] = pt.report.divergence_time;
    p["max_pressure_error_pct"] = pt.report.max_pressure_error_pct;
    p["conservation_error_pct"] = pt.report.conservation_error_pct;
    if (pt.report.has_l2) p["l2_combined"] = pt.report.l2.combined;
    pts.push_back(p);
  }
  j["points"] = pts;
  return j.dump(2) + "\n";
}

namespace {

std::string default_label(const RunConfig& cfg) {
  return cfg.case_name + "_" + to_string(cfg.scheme) + "_p" + std::to_string(cfg.degree) + "_N" +
         std::to_string(cfg.elements);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + path + "'");
  out << content;
}

} // namespace

std::string emit_run_files(const RunReport& report) {
  namespace fs = std::filesystem;
  const RunConfig& cfg = report.config;
  fs::create_directories(cfg.out_dir);
  const std::string stem = cfg.label.empty() ? default_label(cfg) : cfg.label;
  write_file(cfg.out_dir + "/" + stem + ".csv", write_run_csv(report));
  write_file(cfg.out_dir + "/" + stem + ".json", write_run_json(report));
  return stem;
}

std::string emit_sweep_files(const SweepReport& report, const RunConfig& base) {
  namespace fs = std::filesystem;
  fs::create_directories(base.out_dir);
  const std::string stem =
      (base.label.empty() ? default_label(base) : base.label) + "_sweep_" + report.axis;
  write_file(base.out_dir + "/" + stem + ".csv", write_sweep_csv(report));
  write_file(base.out_dir + "/" + stem + ".json", write_sweep_json(report));
  return stem;
}

} // namespace dgmc
