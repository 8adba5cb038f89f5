#include "cases.hpp"

#include "diagnostics.hpp"

#include <cmath>

namespace dgmc {

double CaseSpec::period() const {
  if (advection_speed == 0.0) throw CaseError("case '" + name + "' has no advection period");
  return domain_length() / std::abs(advection_speed);
}

std::vector<std::string> case_names() {
  return {"gaussian", "bubble600", "bubble1", "bubble600-o2", "mms"};
}

CaseInfo case_info(const std::string& name) {
  CaseInfo info;
  if (name == "gaussian") {
    info.species_names = {"SP1", "SP2"};
    info.default_thermo_file = "fictitious.thermo";
    info.gas_constant = 1.0;
  } else if (name == "bubble600" || name == "bubble1") {
    info.species_names = {"N2", "NC12H26"};
    info.default_thermo_file = "therm.dat";
  } else if (name == "bubble600-o2") {
    info.species_names = {"N2", "NC12H26", "O2"};
    info.default_thermo_file = "therm.dat";
  } else if (name == "mms") {
    info.species_names = {"GAS"};
    info.default_thermo_file = "fictitious.thermo";
    info.gas_constant = 1.0;
  } else {
    throw CaseError("unknown case '" + name + "'");
  }
  return info;
}

ThermoTable make_case_table(const ThermoDatabase& db, const CaseInfo& info,
                            double extrapolation_margin) {
  ThermoTable table;
  table.gas_constant = info.gas_constant;
  table.extrapolation_margin = extrapolation_margin;
  for (const std::string& name : info.species_names) table.species.push_back(db.lookup(name));
  return table;
}

namespace {

// Thermal-bubble primitive profile (shared by the 600 m/s and 1 m/s cases).
void bubble_state(double x, double v0, std::span<const double> molar_mass, bool with_o2,
                  std::span<double> y) {
  constexpr double t_min = 363.0, t_max = 900.0, pressure = 6.0e6;
  const double shape = std::tanh(25.0 * std::abs(x) - 5.0);
  const double y_fuel = 0.5 * (1.0 - shape);
  const double y_n2 = 1.0 - y_fuel;
  const double T = 0.5 * (t_min + t_max) + 0.5 * (t_max - t_min) * shape;

  const double inv_wbar = y_n2 / molar_mass[0] + y_fuel / molar_mass[1];
  const double rho = pressure / (kUniversalGasConstant * T * inv_wbar);
  y[StateLayout::momentum] = rho * v0;
  y[StateLayout::zeta] = pressure;
  y[2] = rho * y_n2 / molar_mass[0];
  y[3] = rho * y_fuel / molar_mass[1];
  if (with_o2) y[4] = 0.0;
}

CaseSpec make_bubble(const std::string& name, const ThermoTable& table, double v0, bool with_o2) {
  CaseSpec cs;
  cs.name = name;
  cs.species_names = with_o2 ? std::vector<std::string>{"N2", "NC12H26", "O2"}
                             : std::vector<std::string>{"N2", "NC12H26"};
  cs.default_thermo_file = "therm.dat";
  cs.advection_speed = v0;
  cs.background_pressure = 6.0e6;
  cs.default_elements = (v0 == 1.0) ? 50 : 25;
  cs.default_degree = (v0 == 1.0) ? 2 : 3;
  cs.default_cfl = (v0 == 1.0) ? 0.8 : 0.6;
  cs.default_periods = (v0 == 1.0) ? 10.0 : 100.0;

  std::vector<double> w;
  for (const SpeciesThermo& s : table.species) w.push_back(s.molar_mass);
  cs.initial = [w, v0, with_o2](double x, std::span<double> y) {
    bubble_state(x, v0, w, with_o2, y);
  };
  const double xl = cs.x_left, length = cs.domain_length();
  auto init = cs.initial;
  cs.exact = [init, v0, xl, length](double x, double t, std::span<double> y) {
    double xs = std::fmod(x - v0 * t - xl, length);
    if (xs < 0.0) xs += length;
    init(xl + xs, y);
  };
  return cs;
}

CaseSpec make_gaussian(const ThermoTable& table) {
  CaseSpec cs;
  cs.name = "gaussian";
  cs.species_names = {"SP1", "SP2"};
  cs.default_thermo_file = "fictitious.thermo";
  cs.gas_constant = 1.0;
  cs.refs = NormalizationRefs::nondimensional();
  cs.advection_speed = 5.0;
  cs.background_pressure = 2.0;
  cs.default_elements = 50; // h = 0.02
  cs.default_degree = 3;
  cs.default_cfl = 0.1;
  cs.default_periods = 1.0;

  const double w1 = table.species[0].molar_mass;
  const double w2 = table.species[1].molar_mass;
  cs.initial = [w1, w2](double x, std::span<double> y) {
    const double y1 = 0.5 * (std::sin(2.0 * M_PI * x) + 1.0);
    const double rho = std::exp(-500.0 * x * x) + 4.0;
    y[StateLayout::momentum] = rho * 5.0;
    y[StateLayout::zeta] = 2.0;
    y[2] = rho * y1 / w1;
    y[3] = rho * (1.0 - y1) / w2;
  };
  const double xl = cs.x_left, length = cs.domain_length();
  auto init = cs.initial;
  cs.exact = [init, xl, length](double x, double t, std::span<double> y) {
    double xs = std::fmod(x - 5.0 * t - xl, length);
    if (xs < 0.0) xs += length;
    init(xl + xs, y);
  };
  return cs;
}

// Manufactured fields for the nonconservative-term verification: smooth
// periodic profiles in xi = x - t with a nonconstant velocity, single
// constant-cp species (gamma = 1.4), unit molar mass, R0 = 1.
struct MmsFields {
  double v, dv, P, dP, rho, drho;
};
MmsFields mms_fields(double xi) {
  const double a = 2.0 * M_PI * xi;
  const double g = 2.0 * M_PI;
  MmsFields f;
  f.v = 1.0 + 0.1 * std::sin(a);
  f.dv = 0.1 * g * std::cos(a);
  f.P = 1.0 + 0.1 * std::cos(a);
  f.dP = -0.1 * g * std::sin(a);
  f.rho = 1.0 + 0.2 * std::sin(a + 1.0);
  f.drho = 0.2 * g * std::cos(a + 1.0);
  return f;
}

CaseSpec make_mms(const ThermoTable&) {
  CaseSpec cs;
  cs.name = "mms";
  cs.species_names = {"GAS"};
  cs.default_thermo_file = "fictitious.thermo";
  cs.gas_constant = 1.0;
  cs.refs = NormalizationRefs::nondimensional();
  cs.advection_speed = 1.0; // manufactured wave speed; one period returns the fields
  cs.default_elements = 16;
  cs.default_degree = 2;
  cs.default_cfl = 0.2;
  cs.default_periods = 1.0;

  cs.initial = [](double x, std::span<double> y) {
    const MmsFields f = mms_fields(x);
    y[StateLayout::momentum] = f.rho * f.v;
    y[StateLayout::zeta] = f.P;
    y[2] = f.rho; // W = 1
  };
  cs.exact = [](double x, double t, std::span<double> y) {
    const MmsFields f = mms_fields(x - t);
    y[StateLayout::momentum] = f.rho * f.v;
    y[StateLayout::zeta] = f.P;
    y[2] = f.rho;
  };
  constexpr double gamma = 1.4;
  cs.source = [](double x, double t, std::span<double> s) {
    const MmsFields f = mms_fields(x - t);
    s[StateLayout::momentum] =
        f.drho * f.v * (f.v - 1.0) + f.rho * f.dv * (2.0 * f.v - 1.0) + f.dP;
    s[StateLayout::zeta] = f.dP * (f.v - 1.0) + gamma * f.P * f.dv;
    s[2] = f.drho * (f.v - 1.0) + f.rho * f.dv;
  };
  return cs;
}

} // namespace

CaseSpec build_case(const std::string& name, const ThermoTable& table) {
  if (name == "gaussian") return make_gaussian(table);
  if (name == "bubble600") return make_bubble(name, table, 600.0, false);
  if (name == "bubble1") return make_bubble(name, table, 1.0, false);
  if (name == "bubble600-o2") return make_bubble(name, table, 600.0, true);
  if (name == "mms") return make_mms(table);
  throw CaseError("unknown case '" + name + "'");
}

GlobalSolution initialize_solution(const CaseSpec& cs, const Discretization& disc,
                                   const ThermoTable& table, Formulation form) {
  const int m = 2 + table.n_species();
  GlobalSolution sol;
  sol.form = form;
  sol.resize(disc.mesh.n_elements, disc.ops.n_b, m);
  std::vector<double> y(m);
  for (int e = 0; e < disc.mesh.n_elements; ++e) {
    for (int k = 0; k < disc.ops.n_b; ++k) {
      const double x = disc.mesh.x_of(e, disc.basis.nodes[k]);
      cs.initial(x, y);
      if (form == Formulation::energy) {
        y[StateLayout::zeta] = total_energy_density(
            table, y[StateLayout::momentum], y[StateLayout::zeta],
            {y.data() + 2, static_cast<std::size_t>(table.n_species())});
      }
      double* node = sol.node(e, k);
      for (int c = 0; c < m; ++c) node[c] = y[c];
    }
  }
  return sol;
}

ExactSampler exact_sampler(const CaseSpec& cs, const ThermoTable& table, Formulation form,
                           double t) {
  if (!cs.has_exact()) throw CaseHasNoExact("case '" + cs.name + "' has no exact solution");
  auto exact = cs.exact;
  if (form == Formulation::pressure) {
    return [exact, t](double x, std::span<double> y) { exact(x, t, y); };
  }
  const ThermoTable* tab = &table;
  const int ns = table.n_species();
  return [exact, t, tab, ns](double x, std::span<double> y) {
    exact(x, t, y);
    y[StateLayout::zeta] =
        total_energy_density(*tab, y[StateLayout::momentum], y[StateLayout::zeta],
                             {y.data() + 2, static_cast<std::size_t>(ns)});
  };
}

} // namespace dgmc
