#include "unimod/admm.hpp"

#include "solver_detail.hpp"
#include "unimod/diagnostics.hpp"
#include "unimod/gradient.hpp"
#include "unimod/metrics.hpp"

namespace unimod {

namespace {

bool equal_penalties(const SolverState& s) {
  for (double rho : s.rho_n)
    if (rho != s.rho_n.front()) return false;
  return true;
}

// Unprojected minimizer of the augmented Lagrangian in Φ.
PhaseMatrix admm_phi_raw(const SolverState& s) {
  PhaseMatrix acc = PhaseMatrix::Zero(s.phi.rows(), s.phi.cols());
  if (equal_penalties(s)) {
    for (std::size_t b = 0; b < s.blocks.size(); ++b) acc += s.phi_n[b] + s.lambda_n[b] / s.rho_n[b];
    return acc / static_cast<double>(s.blocks.size());
  }
  double rho_sum = 0.0;
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    acc += s.rho_n[b] * s.phi_n[b] + s.lambda_n[b];
    rho_sum += s.rho_n[b];
  }
  return acc / rho_sum;
}

PhaseMatrix local_step(const SolverState& s, std::size_t b, const PhaseMatrix& phi_next,
                       const GradientMatrix& grad) {
  return phi_next - (grad + s.lambda_n[b]) / (s.rho_n[b] + s.l_n[b]);
}

}  // namespace

SolverState admm_init(int n_len, int m_count, const LagSet& t, double rho_multiplier,
                      std::uint64_t seed, const InitOptions& options) {
  return detail::init_state(Algorithm::Admm, n_len, m_count, t, t.lags(), rho_multiplier, seed,
                            options.zero_multipliers, options.theory_checks);
}

PhaseMatrix admm_phi_update(const SolverState& state, Projection projection) {
  return project_phase(admm_phi_raw(state), projection);
}

PhaseMatrix admm_phin_update(const SolverState& state, int n, const PhaseMatrix& phi_next) {
  const std::size_t b = state.block_index(n);
  return local_step(state, b, phi_next, grad_fn(phi_next, n));
}

Eigen::MatrixXd admm_dual_update(const SolverState& state, int n, const PhaseMatrix& phi_next,
                                 const PhaseMatrix& phin_next) {
  const std::size_t b = state.block_index(n);
  return state.lambda_n[b] + state.rho_n[b] * (phin_next - phi_next);
}

std::pair<SolverState, IterationRecord> admm_iterate(const SolverState& state, IterationContext& ctx) {
  const std::size_t count = state.blocks.size();
  IterationRecord rec;
  rec.selected = ctx.accel.sbcd_enabled ? sbcd_select_mask(count, ctx.accel.sbcd_probability, ctx.sampling)
                                        : std::vector<bool>(count, true);

  // S.1, with optional extrapolation applied before the projection.
  PhaseMatrix raw = admm_phi_raw(state);
  if (ctx.momentum > 0.0) raw = agd_extrapolate_raw(raw, state.phi, ctx.momentum);
  detail::Projected projected = detail::project_with_offset(raw, ctx.projection);

  SolverState next = state;
  next.phi = std::move(projected.phi);
  next.k = state.k + 1;
  const SequenceSet x_next = phases_to_sequences(next.phi);

  // S.2 and S.3, one independent task per block.
  std::vector<double> objective_terms(count, 0.0);
  rec.block_values.assign(count, 0.0);
  detail::for_each_block(count, detail::worth_parallel(state, ctx.parallel), [&](std::size_t b) {
    const int n = state.blocks[b];
    if (rec.selected[b]) {
      GradientEval eval = grad_fn_with_value(x_next, n);
      objective_terms[b] = eval.value;
      next.phi_n[b] = local_step(state, b, next.phi, eval.grad);
      next.lambda_n[b] = state.lambda_n[b] + state.rho_n[b] * (next.phi_n[b] - next.phi);
    } else {
      objective_terms[b] = lag_objective(x_next, n);
      detail::recenter(next.phi_n[b], projected.offset);
    }
    rec.block_values[b] = lag_objective(phases_to_sequences(next.phi_n[b]), n);
  });

  ctx.phi_prev = state.phi;
  rec.residual = residuals(state, next, ctx.projection);
  double objective = 0.0;
  for (double v : objective_terms) objective += v;
  rec.record.k = state.k;
  rec.record.objective = objective;
  rec.record.aug_lagrangian = augmented_lagrangian(next, rec.block_values, 0.0);
  rec.record.combined_residual = rec.residual.combined;
  rec.record.consensus_gap = consensus_gap(next, ctx.projection);
  return {std::move(next), std::move(rec)};
}

SolveResult solve_admm(const SolverConfig& config) {
  config.validate();
  if (config.algorithm != Algorithm::Admm) throw Error(ErrorKind::Config, "algorithm: expected admm");
  SolverState initial = admm_init(config.n_len, config.m_count, config.lags, config.rho_multiplier, config.seed,
                                  {config.zero_multiplier_init, config.theory_checks});
  return detail::run_solver(config, std::move(initial), &admm_iterate);
}

}  // namespace unimod
