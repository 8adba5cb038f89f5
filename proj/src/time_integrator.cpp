#include "time_integrator.hpp"

#include <cmath>

namespace dgmc {

double stable_timestep(const ResidualEvaluator& eval, const GlobalSolution& sol, double cfl) {
  const ThermoTable& table = eval.thermo();
  const int p = eval.discretization().basis.degree;
  const double h = eval.discretization().mesh.h();
  double speed = 0.0;
  for (int e = 0; e < sol.n_elements; ++e) {
    for (int k = 0; k < sol.n_b; ++k) {
      const EvalPoint ep = evaluate_point(table, sol.form,
                                          {sol.node(e, k), static_cast<std::size_t>(sol.m)});
      speed = std::max(speed, std::abs(ep.v) + ep.c);
    }
  }
  if (!(speed > 0.0)) throw NonFiniteState("stable_timestep: nonpositive wave speed");
  return cfl * h / ((2.0 * p + 1.0) * speed);
}

void check_state_valid(const ThermoTable& table, const GlobalSolution& sol) {
  for (double c : sol.coeff) {
    if (!std::isfinite(c)) throw NonFiniteState("non-finite coefficient");
  }
  for (int e = 0; e < sol.n_elements; ++e) {
    for (int k = 0; k < sol.n_b; ++k) {
      const double* y = sol.node(e, k);
      double rho = 0.0;
      for (int i = 0; i < table.n_species(); ++i) rho += table.species[i].molar_mass * y[2 + i];
      if (!(rho > 0.0)) throw NonFiniteState("nonpositive density at element " + std::to_string(e));
      if (sol.form == Formulation::pressure && !(y[StateLayout::zeta] > 0.0)) {
        throw NonFiniteState("nonpositive pressure at element " + std::to_string(e));
      }
    }
  }
}

void forward_euler_step(const RhsFn& rhs, const StateCheck& check, GlobalSolution& sol, double dt,
                        GlobalSolution& work_rhs) {
  rhs(sol, sol.time, work_rhs);
  const std::size_t n = sol.coeff.size();
  for (std::size_t i = 0; i < n; ++i) sol.coeff[i] += dt * work_rhs.coeff[i];
  sol.time += dt;
  if (check) check(sol);
}

void ssprk3_step(const RhsFn& rhs, const StateCheck& check, GlobalSolution& sol, double dt,
                 GlobalSolution& stage, GlobalSolution& work_rhs) {
  const std::size_t n = sol.coeff.size();
  stage = sol;

  // u1 = u + dt L(u)
  rhs(stage, sol.time, work_rhs);
  for (std::size_t i = 0; i < n; ++i) stage.coeff[i] += dt * work_rhs.coeff[i];
  if (check) check(stage);

  // u2 = 3/4 u + 1/4 (u1 + dt L(u1))
  rhs(stage, sol.time + dt, work_rhs);
  for (std::size_t i = 0; i < n; ++i) {
    stage.coeff[i] = 0.75 * sol.coeff[i] + 0.25 * (stage.coeff[i] + dt * work_rhs.coeff[i]);
  }
  if (check) check(stage);

  // u^{n+1} = 1/3 u + 2/3 (u2 + dt L(u2))
  rhs(stage, sol.time + 0.5 * dt, work_rhs);
  for (std::size_t i = 0; i < n; ++i) {
    sol.coeff[i] = sol.coeff[i] / 3.0 + (2.0 / 3.0) * (stage.coeff[i] + dt * work_rhs.coeff[i]);
  }
  sol.time += dt;
  if (check) check(sol);
}

namespace {

RhsFn bind_rhs(ResidualEvaluator& eval) {
  return [&eval](const GlobalSolution& s, double t, GlobalSolution& out) { eval.eval(s, t, out); };
}

StateCheck bind_check(ResidualEvaluator& eval) {
  const ThermoTable& table = eval.thermo();
  return [&table](const GlobalSolution& s) { check_state_valid(table, s); };
}

} // namespace

void forward_euler_step(ResidualEvaluator& eval, GlobalSolution& sol, double dt,
                        GlobalSolution& work_rhs) {
  forward_euler_step(bind_rhs(eval), bind_check(eval), sol, dt, work_rhs);
}

void ssprk3_step(ResidualEvaluator& eval, GlobalSolution& sol, double dt, GlobalSolution& stage,
                 GlobalSolution& work_rhs) {
  ssprk3_step(bind_rhs(eval), bind_check(eval), sol, dt, stage, work_rhs);
}

} // namespace dgmc
