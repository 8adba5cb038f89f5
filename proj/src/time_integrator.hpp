/// @file time_integrator.hpp
/// @brief Explicit SSPRK3 and Forward Euler stepping with CFL-based
///        step-size selection and divergence detection.

#pragma once

#include "dg_residual.hpp"
#include "state.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace dgmc {

struct NonFiniteState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TimeScheme { ssprk3, forward_euler };

struct StepControl {
  double cfl = 0.6;
  std::optional<double> dt_fixed; // overrides the CFL when set
  double t_end = 0.0;
  long long max_steps = 500000000;
};

/// Right-hand side d(coeff)/dt = rhs(sol, t); the time integrators are
/// generic over it so tests can drive plain ODE systems.
using RhsFn = std::function<void(const GlobalSolution&, double, GlobalSolution&)>;
/// Post-stage validity check; throws NonFiniteState to signal divergence.
using StateCheck = std::function<void(const GlobalSolution&)>;

/// CFL-based step size: dt = cfl * h / ((2p+1) max_nodes(|v| + c)).
double stable_timestep(const ResidualEvaluator& eval, const GlobalSolution& sol, double cfl);

/// One Forward Euler step: u <- u + dt rhs(u).
void forward_euler_step(const RhsFn& rhs, const StateCheck& check, GlobalSolution& sol, double dt,
                        GlobalSolution& work_rhs);

/// Shu-Osher three-stage SSPRK3 step (convex combination of Euler steps).
void ssprk3_step(const RhsFn& rhs, const StateCheck& check, GlobalSolution& sol, double dt,
                 GlobalSolution& stage, GlobalSolution& work_rhs);

/// Solver-bound conveniences wiring the residual evaluator and the
/// finiteness / positivity check.
void forward_euler_step(ResidualEvaluator& eval, GlobalSolution& sol, double dt,
                        GlobalSolution& work_rhs);
void ssprk3_step(ResidualEvaluator& eval, GlobalSolution& sol, double dt, GlobalSolution& stage,
                 GlobalSolution& work_rhs);

/// Verifies coefficients are finite and nodal density/pressure are positive;
/// throws NonFiniteState otherwise.
void check_state_valid(const ThermoTable& table, const GlobalSolution& sol);

} // namespace dgmc
