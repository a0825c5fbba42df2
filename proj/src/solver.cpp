#include "unimod/solver.hpp"

#include "solver_detail.hpp"
#include "unimod/diagnostics.hpp"
#include "unimod/pdmm.hpp"
#include "unimod/gradient.hpp"
#include "unimod/metrics.hpp"

#include <chrono>
#include <cmath>

namespace unimod {

std::string_view to_string(Algorithm a) { return a == Algorithm::Admm ? "admm" : "pdmm"; }

std::string_view to_string(TheoryChecks t) {
  switch (t) {
    case TheoryChecks::Off: return "off";
    case TheoryChecks::Report: return "report";
    case TheoryChecks::Strict: return "strict";
  }
  return "report";
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Converged: return "converged";
    case StopReason::IterationBudget: return "iteration-budget";
    case StopReason::Diverged: return "diverged";
    case StopReason::TheoryViolation: return "theory-violation";
  }
  return "iteration-budget";
}

std::string_view to_string(Projection p) { return p == Projection::Wrap ? "wrap" : "clamp"; }

void SolverConfig::validate() const {
  if (n_len < 2) throw Error(ErrorKind::Config, "n_len: must be at least 2");
  if (m_count < 2) throw Error(ErrorKind::Config, "m_count: must be at least 2 (single-sequence design is unsupported)");
  if (lags.empty()) throw Error(ErrorKind::Config, "lags: lag set is empty");
  if (lags.n_len() != n_len) throw Error(ErrorKind::Config, "lags: built for a different sequence length");
  if (!(rho_multiplier > 0.0)) throw Error(ErrorKind::Config, "rho_multiplier: must be positive");
  if (theory_checks == TheoryChecks::Strict && rho_multiplier < 9.0)
    throw Error(ErrorKind::Config, "rho_multiplier: strict theory checks require rho_multiplier >= 9");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Config, "epsilon: must be positive");
  if (max_iter < 0) throw Error(ErrorKind::Config, "max_iter: must be nonnegative");
  if (algorithm == Algorithm::Pdmm && !lags.include_zero())
    throw Error(ErrorKind::Config, "lag_lo: pdmm requires lag_lo = 0 (use admm for windows without lag 0)");
  accel.validate();
}

std::size_t SolverState::block_index(int n) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b] == n) return b;
  throw Error(ErrorKind::InvalidLag, "lag " + std::to_string(n) + " has no local block");
}

IterationContext IterationContext::from_config(const SolverConfig& config) {
  IterationContext ctx;
  ctx.projection = config.projection;
  ctx.accel = config.accel;
  ctx.sampling = make_stream(config.seed, kStreamBlockSampling);
  ctx.momentum = config.accel.agd_enabled ? config.accel.agd_momentum : 0.0;
  ctx.parallel = config.parallel;
  return ctx;
}

namespace detail {

Projected project_with_offset(const PhaseMatrix& raw, Projection projection) {
  Projected out{project_phase(raw, projection), Eigen::MatrixXd::Zero(raw.rows(), raw.cols())};
  if (projection == Projection::Wrap)
    out.offset = ((out.phi - raw) / kTwoPi).array().round() * kTwoPi;
  return out;
}

SolverState init_state(Algorithm algorithm, int n_len, int m_count, const LagSet& t,
                       std::vector<int> blocks, double rho_multiplier, std::uint64_t seed,
                       bool zero_multipliers, TheoryChecks theory_checks) {
  if (n_len < 2 || m_count < 2)
    throw Error(ErrorKind::Config, "sizes must satisfy n_len >= 2 and m_count >= 2");
  if (t.empty() || t.n_len() != n_len) throw Error(ErrorKind::Config, "lag set does not match n_len");
  if (!(rho_multiplier > 0.0)) throw Error(ErrorKind::Config, "rho_multiplier: must be positive");
  if (theory_checks == TheoryChecks::Strict && rho_multiplier < 9.0)
    throw Error(ErrorKind::Config, "rho_multiplier: strict theory checks require rho_multiplier >= 9");

  SolverState s;
  s.algorithm = algorithm;
  s.lags = t;
  s.blocks = std::move(blocks);

  Rng phase_stream = make_stream(seed, kStreamInitPhases);
  s.phi.resize(n_len, m_count);
  for (Eigen::Index m = 0; m < m_count; ++m)
    for (Eigen::Index i = 0; i < n_len; ++i) s.phi(i, m) = kTwoPi * uniform01(phase_stream);

  Rng multiplier_stream = make_stream(seed, kStreamInitMultipliers);
  const double lip = lipschitz_bound(n_len, m_count);
  s.l_0 = algorithm == Algorithm::Pdmm ? lip : 0.0;
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    Eigen::MatrixXd lambda(n_len, m_count);
    for (Eigen::Index m = 0; m < m_count; ++m)
      for (Eigen::Index i = 0; i < n_len; ++i)
        lambda(i, m) = zero_multipliers ? 0.0 : 2.0 * uniform01(multiplier_stream) - 1.0;
    s.phi_n.push_back(s.phi);
    s.lambda_n.push_back(std::move(lambda));
    s.l_n.push_back(lip);
    s.rho_n.push_back(rho_multiplier * lip);
  }
  s.k = 1;
  return s;
}

SolveResult run_solver(const SolverConfig& config, SolverState initial, IterateFn iterate) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  SolveResult result;
  IterationContext ctx = IterationContext::from_config(config);
  SolverState state = std::move(initial);
  result.initial_objective = objective_total(state.phi, state.lags);

  double lagrangian = augmented_lagrangian(state);
  const double lagrangian_first = lagrangian;
  result.theory.min_aug_lagrangian = lagrangian;

  bool decrease_theory = state.algorithm == Algorithm::Admm;
  bool lower_bound_theory = state.algorithm == Algorithm::Admm;
  for (std::size_t b = 0; b < state.blocks.size(); ++b) {
    const auto [c_bar, c_tilde] = sufficient_decrease_coefficients(state.rho_n[b], state.l_n[b]);
    decrease_theory = decrease_theory && c_bar >= 0.0 && c_tilde >= 0.0;
    lower_bound_theory = lower_bound_theory && state.rho_n[b] > 5.0 * state.l_n[b];
    result.theory.rho_rule_satisfied = result.theory.rho_rule_satisfied && state.rho_n[b] >= 9.0 * state.l_n[b];
  }
  // Lemma bounds describe the plain scheme only; sampling and momentum void them.
  const bool plain = !(config.accel.sbcd_enabled && config.accel.sbcd_probability < 1.0) &&
                     !(config.accel.agd_enabled && config.accel.agd_momentum > 0.0);
  const bool checking = config.theory_checks != TheoryChecks::Off;
  decrease_theory = decrease_theory && plain && checking;
  lower_bound_theory = lower_bound_theory && plain && checking;

  const double guard_base = std::max(result.initial_objective, 1e-300);
  long increase_streak = 0;
  result.reason = StopReason::IterationBudget;

  for (long it = 0; it < config.max_iter; ++it) {
    auto [next, rec] = iterate(state, ctx);
    rec.record.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    const double next_lagrangian = rec.record.aug_lagrangian;

    bool violated = false;
    if (decrease_theory || lower_bound_theory) ++result.theory.iterations_checked;
    if (decrease_theory) {
      const double slack = 1e-9 * std::max(1.0, std::abs(lagrangian));
      const double rise = (next_lagrangian - lagrangian) / std::max(1.0, std::abs(lagrangian));
      if (state.k >= 2) result.theory.max_relative_increase = std::max(result.theory.max_relative_increase, rise);
      // Both bounds rest on Λ_n = −∇f_n(Φ_n) − L_n(Φ_n − Φ), which holds only after the first
      // dual step; the step out of a random Λ¹ is not covered.
      if (state.k >= 2 && next_lagrangian > lagrangian + slack) {
        ++result.theory.monotonicity_violations;
        violated = true;
      }
      if (state.k >= 2 && lagrangian - next_lagrangian < sufficient_decrease_bound(state, next, ctx.projection) - slack) {
        ++result.theory.sufficient_decrease_violations;
        violated = true;
      }
    }
    if (lower_bound_theory && next_lagrangian < -1e-9 * (1.0 + std::abs(lagrangian_first))) {
      ++result.theory.lower_bound_violations;
      violated = true;
    }
    result.theory.min_aug_lagrangian = std::min(result.theory.min_aug_lagrangian, next_lagrangian);

    if (ctx.momentum > 0.0) {
      increase_streak = next_lagrangian > lagrangian ? increase_streak + 1 : 0;
      if (increase_streak >= 50) {
        ctx.momentum = 0.0;
        ++result.theory.agd_restarts;
      }
    }

    const bool converged = termination_met(rec.residual, config.epsilon);
    const double objective = rec.record.objective;
    result.trace.push_back(rec.record);
    state = std::move(next);
    lagrangian = next_lagrangian;

    if (converged) {
      result.reason = StopReason::Converged;
      break;
    }
    // Projected phases keep f bounded, so a runaway shows up in the multiplier terms of L first.
    if (!std::isfinite(objective) || !std::isfinite(next_lagrangian) || objective > 1e3 * guard_base ||
        std::abs(next_lagrangian) > 1e3 * guard_base) {
      result.reason = StopReason::Diverged;
      break;
    }
    if (violated && config.theory_checks == TheoryChecks::Strict) {
      result.reason = StopReason::TheoryViolation;
      break;
    }
  }

  result.phi = state.phi;
  result.final_state = std::move(state);
  return result;
}

}  // namespace detail

SolveResult solve(const SolverConfig& config) {
  return config.algorithm == Algorithm::Admm ? solve_admm(config) : solve_pdmm(config);
}

}  // namespace unimod
