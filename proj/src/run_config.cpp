#include "run_config.hpp"

#include "cases.hpp"

#include <fstream>
#include <sstream>

namespace dgmc {

namespace {

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config field '" + key + "': bad number '" + value + "'");
  }
}

long long to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config field '" + key + "': bad integer '" + value + "'");
  }
}

} // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "case") cfg.case_name = value;
  else if (key == "scheme") {
    if (!scheme_from_string(value, cfg.scheme)) {
      throw ConfigError("config field 'scheme': expected one of P1,P2,P3,E1,E2, got '" + value +
                        "'");
    }
  } else if (key == "p") cfg.degree = static_cast<int>(to_int(key, value));
  else if (key == "N") cfg.elements = static_cast<int>(to_int(key, value));
  else if (key == "cfl") cfg.cfl = to_double(key, value);
  else if (key == "dt") cfg.dt = to_double(key, value);
  else if (key == "periods") cfg.periods = to_double(key, value);
  else if (key == "t_end") cfg.t_end = to_double(key, value);
  else if (key == "sample_every_periods") cfg.sample_every_periods = to_double(key, value);
  else if (key == "out") cfg.out_dir = value;
  else if (key == "label") cfg.label = value;
  else if (key == "thermo") cfg.thermo_path = value;
  else if (key == "integrator") {
    if (value == "ssprk3") cfg.integrator = TimeScheme::ssprk3;
    else if (value == "euler") cfg.integrator = TimeScheme::forward_euler;
    else throw ConfigError("config field 'integrator': expected ssprk3|euler, got '" + value + "'");
  } else if (key == "alpha_tol") cfg.alpha_tol = to_double(key, value);
  else if (key == "beta_tol") cfg.beta_tol = to_double(key, value);
  else if (key == "uniform_tol") cfg.uniform_tol = to_double(key, value);
  else if (key == "T_ref") cfg.t_ref = to_double(key, value);
  else if (key == "max_steps") cfg.max_steps = to_int(key, value);
  else if (key == "seed") cfg.seed = to_int(key, value);
  else throw ConfigError("unknown config field '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    std::string stripped;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = true;
      for (char c : line) blank = blank && is_space(c);
      if (blank) continue;
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    auto trim = [&](std::string s) {
      std::size_t b = 0, e = s.size();
      while (b < e && is_space(s[b])) ++b;
      while (e > b && is_space(s[e - 1])) --e;
      return s.substr(b, e - b);
    };
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate(const RunConfig& cfg) {
  case_info(cfg.case_name); // throws CaseError for unknown names
  if (cfg.degree == 0 || cfg.degree < -1 || cfg.degree > 6) {
    throw ConfigError("config field 'p': degree must be in [1, 6]");
  }
  if (cfg.elements == 0 || cfg.elements == 1 || cfg.elements < -1) {
    throw ConfigError("config field 'N': need at least 2 elements");
  }
  if (cfg.dt < 0.0) throw ConfigError("config field 'dt': must be positive");
  if (cfg.dt == 0.0 && cfg.cfl != -1.0 && !(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) {
    throw ConfigError("config field 'cfl': must be in (0, 1]");
  }
  if (cfg.t_end >= 0.0 && cfg.periods >= 0.0) {
    throw ConfigError("config fields 't_end' and 'periods' are mutually exclusive");
  }
}

} // namespace dgmc
