#include "dg_residual.hpp"

#include <cmath>

namespace dgmc {

ResidualEvaluator::ResidualEvaluator(const Discretization& disc, const ThermoTable& table,
                                     SchemeConfig cfg, NormalizationRefs refs)
    : disc_(disc), table_(table), cfg_(cfg), refs_(refs),
      formulation_(formulation_of(cfg.scheme)) {
  m_ = 2 + table.n_species();
  if (table.n_species() > kMaxSpecies) throw std::invalid_argument("too many species");

  const int N = disc.mesh.n_elements;
  const int n_b = disc.ops.n_b;
  const int n_q = disc.ops.n_q;
  const int F = disc.n_faces();

  quad_states_.resize(static_cast<std::size_t>(N) * n_q * m_);
  quad_eval_.resize(static_cast<std::size_t>(N) * n_q);
  trace_eval_.resize(static_cast<std::size_t>(N) * 2);
  residual_.resize(static_cast<std::size_t>(N) * n_b * m_);
  face_flux_.resize(static_cast<std::size_t>(F) * m_);
  face_energy_flux_.assign(F, 0.0);
  face_jump_.assign(F, 0.0);
  energy_error_.assign(N, 0.0);
  alpha_.assign(N, 0.0);
  surf_energy_.assign(N, 0.0);
  uniform_flag_.assign(N, 0);
  scratch_.resize(static_cast<std::size_t>(n_b) * m_);

  const bool corrected = cfg_.correction.variant != CorrectionVariant::none;
  if (corrected) {
    quad_w_.resize(static_cast<std::size_t>(N) * n_q * m_);
    quad_z_.resize(static_cast<std::size_t>(N) * n_q * m_);
    w_hat_.resize(static_cast<std::size_t>(N) * n_b * m_);
    z_hat_.resize(static_cast<std::size_t>(N) * n_b * m_);
    species_mask_.assign(static_cast<std::size_t>(N) * table.n_species(), 0);
  }

  for (int c = 0; c < m_; ++c) {
    state_floor_[c] = refs_.state_scale(c);
    const bool modified = cfg_.correction.variant == CorrectionVariant::modified;
    denom_scale_elem_[c] =
        modified ? refs_.w_scale(c) * refs_.z_scale(c) : refs_.w_scale(c) * refs_.w_scale(c);
    denom_scale_face_[c] = refs_.w_scale(c) * refs_.z_scale(c);
  }
}

std::span<const double> ResidualEvaluator::residual(int e) const {
  const int n = disc_.ops.n_b * m_;
  return {residual_.data() + static_cast<std::size_t>(e) * n, static_cast<std::size_t>(n)};
}
std::span<const double> ResidualEvaluator::w_projected(int e) const {
  const int n = disc_.ops.n_b * m_;
  return {w_hat_.data() + static_cast<std::size_t>(e) * n, static_cast<std::size_t>(n)};
}
std::span<const double> ResidualEvaluator::z_projected(int e) const {
  const int n = disc_.ops.n_b * m_;
  return {z_hat_.data() + static_cast<std::size_t>(e) * n, static_cast<std::size_t>(n)};
}
double ResidualEvaluator::surface_energy_flux(int e) const { return surf_energy_[e]; }
std::span<const double> ResidualEvaluator::face_flux(int f) const {
  return {face_flux_.data() + static_cast<std::size_t>(f) * m_, static_cast<std::size_t>(m_)};
}

void ResidualEvaluator::eval(const GlobalSolution& sol, double t, GlobalSolution& dydt) {
  ++stats_.evaluations;
  dydt.form = sol.form;
  dydt.resize(sol.n_elements, sol.n_b, sol.m);
  dydt.time = sol.time;
  if (formulation_ == Formulation::pressure) {
    eval_pressure(sol, t, dydt);
  } else {
    eval_energy(sol, t, dydt);
  }
}

void ResidualEvaluator::apply_mass_inverse(std::span<const double> residual,
                                           std::span<double> dydt_elem) const {
  const int n_b = disc_.ops.n_b;
  if (disc_.ops.colocated()) {
    for (int k = 0; k < n_b; ++k) {
      const double inv = 1.0 / disc_.ops.mass_diag[k];
      for (int c = 0; c < m_; ++c) dydt_elem[k * m_ + c] = -residual[k * m_ + c] * inv;
    }
    return;
  }
  double x[8];
  for (int c = 0; c < m_; ++c) {
    for (int k = 0; k < n_b; ++k) x[k] = -residual[k * m_ + c];
    cholesky_solve(disc_.ops.mass_chol, n_b, {x, static_cast<std::size_t>(n_b)});
    for (int k = 0; k < n_b; ++k) dydt_elem[k * m_ + c] = x[k];
  }
}

void ResidualEvaluator::add_source(int e, double t, std::span<double> residual) {
  if (!source_) return;
  const int n_b = disc_.ops.n_b;
  const int n_q = disc_.ops.n_q;
  double s[kMaxComponents];
  for (int q = 0; q < n_q; ++q) {
    source_(disc_.quad_x(e, q), t, {s, static_cast<std::size_t>(m_)});
    const double w = disc_.ops.quad_weights[q];
    for (int i = 0; i < n_b; ++i) {
      const double wv = w * disc_.ops.quad_interp[q * n_b + i];
      for (int c = 0; c < m_; ++c) residual[i * m_ + c] -= wv * s[c];
    }
  }
}

void ResidualEvaluator::eval_pressure(const GlobalSolution& sol, double t, GlobalSolution& dydt) {
  const int N = disc_.mesh.n_elements;
  const int n_b = disc_.ops.n_b;
  const int n_q = disc_.ops.n_q;
  const int ns = table_.n_species();
  const Operators& ops = disc_.ops;
  const CorrectionVariant variant = cfg_.correction.variant;
  const bool corrected = variant != CorrectionVariant::none;
  const bool modified = variant == CorrectionVariant::modified;

  // --- Element pre-pass: quadrature states, thermo, auxiliary fields -------
  for (int e = 0; e < N; ++e) {
    const std::span<const double> coeff = sol.element(e);
    double* qs = quad_states_.data() + static_cast<std::size_t>(e) * n_q * m_;
    interpolate_to_quadrature(ops, coeff, m_, {qs, static_cast<std::size_t>(n_q) * m_});
    for (int q = 0; q < n_q; ++q) {
      EvalPoint& ep = quad_eval_[static_cast<std::size_t>(e) * n_q + q];
      ep = evaluate_point(table_, Formulation::pressure, {qs + q * m_, static_cast<std::size_t>(m_)});
      if (ep.extrapolated) ++stats_.extrapolated_points;
    }
    // Traces are nodal values at the element endpoints (Gauss-Lobatto basis).
    trace_eval_[2 * e] =
        evaluate_point(table_, Formulation::pressure, {sol.node(e, 0), static_cast<std::size_t>(m_)});
    trace_eval_[2 * e + 1] = evaluate_point(table_, Formulation::pressure,
                                            {sol.node(e, n_b - 1), static_cast<std::size_t>(m_)});

    if (corrected) {
      std::span<const char> mask;
      if (modified) {
        uniform_flag_[e] = is_uniform_element(coeff, n_b, m_,
                                              {state_floor_.data(), static_cast<std::size_t>(m_)},
                                              cfg_.correction.uniform_tol)
                               ? 1
                               : 0;
        for (int i = 0; i < ns; ++i) {
          double mean = 0.0;
          for (int k = 0; k < n_b; ++k) mean += coeff[k * m_ + 2 + i];
          species_mask_[static_cast<std::size_t>(e) * ns + i] = (mean == 0.0) ? 1 : 0;
        }
        if (cfg_.correction.zero_species_masking) {
          mask = {species_mask_.data() + static_cast<std::size_t>(e) * ns,
                  static_cast<std::size_t>(ns)};
        }
      }
      double* wq = quad_w_.data() + static_cast<std::size_t>(e) * n_q * m_;
      double* zq = quad_z_.data() + static_cast<std::size_t>(e) * n_q * m_;
      for (int q = 0; q < n_q; ++q) {
        aux_vectors_from_point(table_, quad_eval_[static_cast<std::size_t>(e) * n_q + q],
                               {wq + q * m_, static_cast<std::size_t>(m_)},
                               {zq + q * m_, static_cast<std::size_t>(m_)}, mask);
      }
      double* wh = w_hat_.data() + static_cast<std::size_t>(e) * n_b * m_;
      double* zh = z_hat_.data() + static_cast<std::size_t>(e) * n_b * m_;
      l2_project(ops, {wq, static_cast<std::size_t>(n_q) * m_}, m_,
                 {wh, static_cast<std::size_t>(n_b) * m_});
      l2_project(ops, {zq, static_cast<std::size_t>(n_q) * m_}, m_,
                 {zh, static_cast<std::size_t>(n_b) * m_});
    }
  }

  // --- Face pass: face f joins element f (left) and (f+1) % N (right) ------
  const int F = disc_.n_faces();
  double flux_plus[kMaxComponents], flux_minus[kMaxComponents];
  bool mask[kMaxComponents];
  for (int f = 0; f < F; ++f) {
    const int eL = f;
    const int eR = (f + 1) % N;
    const double* yp = sol.node(eL, n_b - 1);
    const double* ym = sol.node(eR, 0);
    const EvalPoint& epp = trace_eval_[2 * eL + 1];
    const EvalPoint& epm = trace_eval_[2 * eR];
    const double lambda =
        cfg_.lambda_override ? *cfg_.lambda_override : wave_speed_estimate(epp, epm);

    double* flux = face_flux_.data() + static_cast<std::size_t>(f) * m_;
    lax_friedrichs_flux(epp, {yp, static_cast<std::size_t>(m_)}, epm,
                        {ym, static_cast<std::size_t>(m_)}, Formulation::pressure, 1.0, lambda,
                        {flux, static_cast<std::size_t>(m_)});
    face_jump_[f] = pressure_jump_term(table_, {yp, static_cast<std::size_t>(m_)},
                                       {ym, static_cast<std::size_t>(m_)}, 1.0);

    if (!corrected) continue;

    const double* whp = w_hat_.data() + (static_cast<std::size_t>(eL) * n_b + (n_b - 1)) * m_;
    const double* whm = w_hat_.data() + (static_cast<std::size_t>(eR) * n_b + 0) * m_;
    physical_flux(epp, {yp, static_cast<std::size_t>(m_)}, Formulation::pressure,
                  {flux_plus, static_cast<std::size_t>(m_)});
    physical_flux(epm, {ym, static_cast<std::size_t>(m_)}, Formulation::pressure,
                  {flux_minus, static_cast<std::size_t>(m_)});

    if (modified && (uniform_flag_[eL] || uniform_flag_[eR])) {
      const double* zhp = z_hat_.data() + (static_cast<std::size_t>(eL) * n_b + (n_b - 1)) * m_;
      const double* zhm = z_hat_.data() + (static_cast<std::size_t>(eR) * n_b + 0) * m_;
      for (int c = 0; c < m_; ++c) mask[c] = false;
      if (cfg_.correction.zero_species_masking) {
        for (int i = 0; i < ns; ++i) {
          mask[2 + i] = species_mask_[static_cast<std::size_t>(eL) * ns + i] &&
                        species_mask_[static_cast<std::size_t>(eR) * ns + i];
        }
      }
      const double energy_jump_n = epp.v * (epp.rho_et + epp.P) - epm.v * (epm.rho_et + epm.P);
      const FaceCorrectionResult fc = corrected_interface_flux(
          {whp, static_cast<std::size_t>(m_)}, {whm, static_cast<std::size_t>(m_)},
          {zhp, static_cast<std::size_t>(m_)}, {zhm, static_cast<std::size_t>(m_)},
          {flux_plus, static_cast<std::size_t>(m_)}, {flux_minus, static_cast<std::size_t>(m_)},
          energy_jump_n, 1.0, {denom_scale_face_.data(), static_cast<std::size_t>(m_)},
          cfg_.correction.beta_tol, {mask, static_cast<std::size_t>(m_)},
          {flux, static_cast<std::size_t>(m_)});
      if (fc.applied) {
        ++stats_.face_corrections_applied;
      } else {
        ++stats_.face_corrections_zeroed;
      }
    }

    face_energy_flux_[f] =
        modified ? energy_interface_flux_modified(
                       epp, epm, {whp, static_cast<std::size_t>(m_)},
                       {whm, static_cast<std::size_t>(m_)}, {flux_plus, static_cast<std::size_t>(m_)},
                       {flux_minus, static_cast<std::size_t>(m_)}, 1.0,
                       {flux, static_cast<std::size_t>(m_)})
                 : energy_interface_flux_lf(epp, epm, 1.0, lambda);
  }

  // --- Element pass: volume terms, surface terms, corrections --------------
  double flux_q[8 * kMaxComponents];
  double dy_dx[kMaxComponents];
  bool mask_elem[kMaxComponents];
  for (int e = 0; e < N; ++e) {
    double* R = residual_.data() + static_cast<std::size_t>(e) * n_b * m_;
    for (int k = 0; k < n_b * m_; ++k) R[k] = 0.0;
    const std::span<const double> coeff = sol.element(e);
    const double* qs = quad_states_.data() + static_cast<std::size_t>(e) * n_q * m_;

    for (int q = 0; q < n_q; ++q) {
      const EvalPoint& ep = quad_eval_[static_cast<std::size_t>(e) * n_q + q];
      physical_flux(ep, {qs + q * m_, static_cast<std::size_t>(m_)}, Formulation::pressure,
                    {flux_q + q * m_, static_cast<std::size_t>(m_)});
    }
    // volume flux: R_i -= sum_q G[i][q] F_q
    for (int i = 0; i < n_b; ++i) {
      for (int q = 0; q < n_q; ++q) {
        const double g = ops.grad_flux[i * n_q + q];
        for (int c = 0; c < m_; ++c) R[i * m_ + c] -= g * flux_q[q * m_ + c];
      }
    }
    // nonconservative volume term (pressure slot)
    for (int q = 0; q < n_q; ++q) {
      for (int c = 0; c < m_; ++c) {
        double d = 0.0;
        for (int j = 0; j < n_b; ++j) d += ops.quad_deriv[q * n_b + j] * coeff[j * m_ + c];
        dy_dx[c] = d;
      }
      const EvalPoint& ep = quad_eval_[static_cast<std::size_t>(e) * n_q + q];
      const double b = nonconservative_volume(table_, ep, {dy_dx, static_cast<std::size_t>(m_)});
      const double wb = ops.quad_weights[q] * b;
      for (int i = 0; i < n_b; ++i) {
        R[i * m_ + StateLayout::zeta] += wb * ops.quad_interp[q * n_b + i];
      }
    }
    // surface flux and jump terms; face e-1 (mod N) is this element's left face
    const int f_left = (e + N - 1) % N;
    const int f_right = e;
    {
      const double* fl = face_flux_.data() + static_cast<std::size_t>(f_left) * m_;
      const double* fr = face_flux_.data() + static_cast<std::size_t>(f_right) * m_;
      for (int c = 0; c < m_; ++c) {
        R[(n_b - 1) * m_ + c] += fr[c];
        R[0 * m_ + c] -= fl[c];
      }
      R[(n_b - 1) * m_ + StateLayout::zeta] += face_jump_[f_right];
      R[0 * m_ + StateLayout::zeta] += face_jump_[f_left];
    }
    add_source(e, t, {R, static_cast<std::size_t>(n_b) * m_});

    if (corrected) {
      surf_energy_[e] = face_energy_flux_[f_right] - face_energy_flux_[f_left];
      const double* wh = w_hat_.data() + static_cast<std::size_t>(e) * n_b * m_;
      const double* zh = z_hat_.data() + static_cast<std::size_t>(e) * n_b * m_;
      energy_error_[e] = energy_consistency_error({wh, static_cast<std::size_t>(n_b) * m_},
                                                  {R, static_cast<std::size_t>(n_b) * m_}, n_b, m_,
                                                  surf_energy_[e]);
      alpha_[e] = 0.0;
      const bool use_elementwise = !(modified && uniform_flag_[e]);
      if (use_elementwise) {
        for (int c = 0; c < m_; ++c) mask_elem[c] = false;
        if (modified && cfg_.correction.zero_species_masking) {
          for (int i = 0; i < ns; ++i) {
            mask_elem[2 + i] = species_mask_[static_cast<std::size_t>(e) * ns + i] != 0;
          }
        }
        const ElementCorrection ec = apply_elementwise_correction(
            {wh, static_cast<std::size_t>(n_b) * m_}, {zh, static_cast<std::size_t>(n_b) * m_},
            energy_error_[e], n_b, m_, cfg_.correction,
            {denom_scale_elem_.data(), static_cast<std::size_t>(m_)},
            {mask_elem, static_cast<std::size_t>(m_)}, {R, static_cast<std::size_t>(n_b) * m_});
        alpha_[e] = ec.alpha;
        if (ec.negative_denominator) ++stats_.negative_denominators;
        if (ec.applied) {
          ++stats_.alpha_applied;
          // residual-scale constraint check (criterion: energy accounting)
          double lhs = 0.0, mag = 0.0;
          for (int k = 0; k < n_b * m_; ++k) {
            lhs += wh[k] * R[k];
            mag += std::abs(wh[k] * R[k]);
          }
          const double scale = std::max({std::abs(surf_energy_[e]), mag, 1e-300});
          stats_.max_constraint_violation =
              std::max(stats_.max_constraint_violation, std::abs(lhs - surf_energy_[e]) / scale);
        } else {
          ++stats_.alpha_zeroed;
        }
      }
    }
    apply_mass_inverse({R, static_cast<std::size_t>(n_b) * m_},
                       dydt.element(e));
  }
}

void ResidualEvaluator::eval_energy(const GlobalSolution& sol, double t, GlobalSolution& dydt) {
  const int N = disc_.mesh.n_elements;
  const int n_b = disc_.ops.n_b;
  const int n_q = disc_.ops.n_q;
  const Operators& ops = disc_.ops;

  const bool colocated = ops.colocated();
  for (int e = 0; e < N; ++e) {
    const std::span<const double> coeff = sol.element(e);
    double* qs = quad_states_.data() + static_cast<std::size_t>(e) * n_q * m_;
    interpolate_to_quadrature(ops, coeff, m_, {qs, static_cast<std::size_t>(n_q) * m_});
    for (int q = 0; q < n_q; ++q) {
      EvalPoint& ep = quad_eval_[static_cast<std::size_t>(e) * n_q + q];
      // warm-start the temperature inversion from this point's previous value
      const double hint = ep.T;
      ep = evaluate_point(table_, Formulation::energy, {qs + q * m_, static_cast<std::size_t>(m_)},
                          hint);
      if (ep.extrapolated) ++stats_.extrapolated_points;
    }
    if (colocated) {
      // quadrature nodes include the element endpoints
      trace_eval_[2 * e] = quad_eval_[static_cast<std::size_t>(e) * n_q];
      trace_eval_[2 * e + 1] = quad_eval_[static_cast<std::size_t>(e) * n_q + (n_q - 1)];
    } else {
      trace_eval_[2 * e] = evaluate_point(table_, Formulation::energy,
                                          {sol.node(e, 0), static_cast<std::size_t>(m_)},
                                          trace_eval_[2 * e].T > 0.0
                                              ? trace_eval_[2 * e].T
                                              : quad_eval_[static_cast<std::size_t>(e) * n_q].T);
      trace_eval_[2 * e + 1] = evaluate_point(
          table_, Formulation::energy, {sol.node(e, n_b - 1), static_cast<std::size_t>(m_)},
          trace_eval_[2 * e + 1].T > 0.0
              ? trace_eval_[2 * e + 1].T
              : quad_eval_[static_cast<std::size_t>(e) * n_q + (n_q - 1)].T);
    }
  }

  const int F = disc_.n_faces();
  for (int f = 0; f < F; ++f) {
    const int eL = f;
    const int eR = (f + 1) % N;
    const EvalPoint& epp = trace_eval_[2 * eL + 1];
    const EvalPoint& epm = trace_eval_[2 * eR];
    const double lambda =
        cfg_.lambda_override ? *cfg_.lambda_override : wave_speed_estimate(epp, epm);
    lax_friedrichs_flux(epp, {sol.node(eL, n_b - 1), static_cast<std::size_t>(m_)}, epm,
                        {sol.node(eR, 0), static_cast<std::size_t>(m_)}, Formulation::energy, 1.0,
                        lambda,
                        {face_flux_.data() + static_cast<std::size_t>(f) * m_,
                         static_cast<std::size_t>(m_)});
    face_energy_flux_[f] = face_flux_[static_cast<std::size_t>(f) * m_ + StateLayout::zeta];
  }

  double flux_q[8 * kMaxComponents];
  for (int e = 0; e < N; ++e) {
    double* R = residual_.data() + static_cast<std::size_t>(e) * n_b * m_;
    for (int k = 0; k < n_b * m_; ++k) R[k] = 0.0;
    const double* qs = quad_states_.data() + static_cast<std::size_t>(e) * n_q * m_;
    for (int q = 0; q < n_q; ++q) {
      const EvalPoint& ep = quad_eval_[static_cast<std::size_t>(e) * n_q + q];
      physical_flux(ep, {qs + q * m_, static_cast<std::size_t>(m_)}, Formulation::energy,
                    {flux_q + q * m_, static_cast<std::size_t>(m_)});
    }
    for (int i = 0; i < n_b; ++i) {
      for (int q = 0; q < n_q; ++q) {
        const double g = ops.grad_flux[i * n_q + q];
        for (int c = 0; c < m_; ++c) R[i * m_ + c] -= g * flux_q[q * m_ + c];
      }
    }
    const int f_left = (e + N - 1) % N;
    const int f_right = e;
    const double* fl = face_flux_.data() + static_cast<std::size_t>(f_left) * m_;
    const double* fr = face_flux_.data() + static_cast<std::size_t>(f_right) * m_;
    for (int c = 0; c < m_; ++c) {
      R[(n_b - 1) * m_ + c] += fr[c];
      R[0 * m_ + c] -= fl[c];
    }
    add_source(e, t, {R, static_cast<std::size_t>(n_b) * m_});
    apply_mass_inverse({R, static_cast<std::size_t>(n_b) * m_}, dydt.element(e));
  }
}

double ResidualEvaluator::max_velocity_deviation(const GlobalSolution& sol, double v_ref) const {
  double worst = 0.0;
  for (int e = 0; e < sol.n_elements; ++e) {
    for (int k = 0; k < sol.n_b; ++k) {
      const double* y = sol.node(e, k);
      double rho = 0.0;
      for (int i = 0; i < table_.n_species(); ++i) rho += table_.species[i].molar_mass * y[2 + i];
      const double v = y[StateLayout::momentum] / rho;
      worst = std::max(worst, std::abs(v - v_ref) / std::max(std::abs(v_ref), 1e-300));
    }
  }
  return worst;
}

} // namespace dgmc
