#include "unimod/pdmm.hpp"

#include "solver_detail.hpp"
#include "unimod/diagnostics.hpp"
#include "unimod/gradient.hpp"
#include "unimod/metrics.hpp"

namespace unimod {

namespace {

// Global step before projection; `anchor` stands in for Φ^k (the extrapolated point under AGD).
PhaseMatrix pdmm_phi_raw(const SolverState& s, const PhaseMatrix& anchor, const GradientMatrix& grad0) {
  PhaseMatrix numer = s.l_0 * anchor - grad0;
  double denom = s.l_0;
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    numer += s.lambda_n[b] + s.rho_n[b] * s.phi_n[b];
    denom += s.rho_n[b];
  }
  return numer / denom;
}

PhaseMatrix local_step(const SolverState& s, std::size_t b, const PhaseMatrix& anchor,
                       const GradientMatrix& grad) {
  return (s.l_n[b] * s.phi_n[b] + s.rho_n[b] * anchor - s.lambda_n[b] - grad) / (s.l_n[b] + s.rho_n[b]);
}

void require_pdmm(const SolverState& s) {
  if (s.algorithm != Algorithm::Pdmm) throw Error(ErrorKind::Config, "state was not built for pdmm");
}

}  // namespace

SolverState pdmm_init(int n_len, int m_count, const LagSet& t, double rho_multiplier, std::uint64_t seed,
                      const InitOptions& options) {
  if (!t.include_zero())
    throw Error(ErrorKind::Config, "lag_lo: pdmm requires lag_lo = 0 (use admm for windows without lag 0)");
  return detail::init_state(Algorithm::Pdmm, n_len, m_count, t, t.nonzero(), rho_multiplier, seed,
                            options.zero_multipliers, options.theory_checks);
}

PhaseMatrix pdmm_phi_update(const SolverState& state, Projection projection) {
  require_pdmm(state);
  return project_phase(pdmm_phi_raw(state, state.phi, grad_fn(state.phi, 0)), projection);
}

PhaseMatrix pdmm_phin_update(const SolverState& state, int n) {
  require_pdmm(state);
  if (n == 0) throw Error(ErrorKind::InvalidLag, "lag 0 is handled by the global step");
  const std::size_t b = state.block_index(n);
  return local_step(state, b, state.phi, grad_fn(state.phi_n[b], n));
}

Eigen::MatrixXd pdmm_dual_update(const SolverState& state, int n, const PhaseMatrix& phin_next) {
  require_pdmm(state);
  const std::size_t b = state.block_index(n);
  return state.lambda_n[b] + state.rho_n[b] * (phin_next - state.phi);
}

std::pair<SolverState, IterationRecord> pdmm_iterate(const SolverState& state, IterationContext& ctx) {
  require_pdmm(state);
  const std::size_t count = state.blocks.size();
  IterationRecord rec;
  rec.selected = ctx.accel.sbcd_enabled ? sbcd_select_mask(count, ctx.accel.sbcd_probability, ctx.sampling)
                                        : std::vector<bool>(count, true);

  // Every update below reads only `state` (iteration k); results land in `next` and are
  // committed together.
  const PhaseMatrix anchor = (ctx.momentum > 0.0 && ctx.phi_prev)
                                 ? agd_extrapolate_raw(state.phi, *ctx.phi_prev, ctx.momentum)
                                 : state.phi;

  SolverState next = state;
  next.k = state.k + 1;
  detail::Projected projected;

  // Task 0 is the global block; tasks 1..count are the local blocks.
  detail::for_each_block(count + 1, detail::worth_parallel(state, ctx.parallel), [&](std::size_t task) {
    if (task == 0) {
      const GradientMatrix grad0 = grad_fn(phases_to_sequences(anchor), 0);
      projected = detail::project_with_offset(pdmm_phi_raw(state, anchor, grad0), ctx.projection);
      return;
    }
    const std::size_t b = task - 1;
    if (!rec.selected[b]) return;
    const GradientMatrix grad = grad_fn(phases_to_sequences(state.phi_n[b]), state.blocks[b]);
    next.phi_n[b] = local_step(state, b, anchor, grad);
    next.lambda_n[b] = state.lambda_n[b] + state.rho_n[b] * (next.phi_n[b] - anchor);
  });

  // Commit: move the local copies into the frame of the projected Φ^{k+1}.
  next.phi = std::move(projected.phi);
  for (std::size_t b = 0; b < count; ++b) detail::recenter(next.phi_n[b], projected.offset);

  const SequenceSet x_next = phases_to_sequences(next.phi);
  std::vector<double> objective_terms(count, 0.0);
  rec.block_values.assign(count, 0.0);
  detail::for_each_block(count, detail::worth_parallel(state, ctx.parallel), [&](std::size_t b) {
    objective_terms[b] = lag_objective(x_next, state.blocks[b]);
    rec.block_values[b] = lag_objective(phases_to_sequences(next.phi_n[b]), state.blocks[b]);
  });
  rec.f0_value = lag_objective(x_next, 0);

  ctx.phi_prev = state.phi;
  rec.residual = residuals(state, next, ctx.projection);
  double objective = rec.f0_value;
  for (double v : objective_terms) objective += v;
  rec.record.k = state.k;
  rec.record.objective = objective;
  rec.record.aug_lagrangian = augmented_lagrangian(next, rec.block_values, rec.f0_value);
  rec.record.combined_residual = rec.residual.combined;
  rec.record.consensus_gap = consensus_gap(next, ctx.projection);
  return {std::move(next), std::move(rec)};
}

SolveResult solve_pdmm(const SolverConfig& config) {
  config.validate();
  if (config.algorithm != Algorithm::Pdmm) throw Error(ErrorKind::Config, "algorithm: expected pdmm");
  SolverState initial = pdmm_init(config.n_len, config.m_count, config.lags, config.rho_multiplier, config.seed,
                                  {config.zero_multiplier_init, config.theory_checks});
  return detail::run_solver(config, std::move(initial), &pdmm_iterate);
}

}  // namespace unimod
