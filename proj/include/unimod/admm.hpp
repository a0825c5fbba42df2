#pragma once

#include "unimod/solver.hpp"

#include <utility>

namespace unimod {

struct InitOptions {
  bool zero_multipliers = false;
  TheoryChecks theory_checks = TheoryChecks::Report;
};

/// Random Φ¹ on [0, 2π), Λ_n¹ uniform on [−1, 1] (or zero), Φ_n¹ = Φ¹, ρ_n = multiplier·L_n.
/// Strict theory checks reject multipliers below 9.
SolverState admm_init(int n_len, int m_count, const LagSet& t, double rho_multiplier,
                      std::uint64_t seed, const InitOptions& options = {});

/// Global step: P((Σ ρ_nΦ_n + Λ_n) / Σ ρ_n), which is the plain average of Φ_n + Λ_n/ρ_n
/// when every ρ_n is equal.
PhaseMatrix admm_phi_update(const SolverState& state, Projection projection = Projection::Wrap);

/// Linearized proximal step Φ^{k+1} − (∇f_n(Φ^{k+1}) + Λ_n^k)/(ρ_n + L_n). Not projected.
PhaseMatrix admm_phin_update(const SolverState& state, int n, const PhaseMatrix& phi_next);

/// Λ_n + ρ_n(Φ_n^{k+1} − Φ^{k+1}).
Eigen::MatrixXd admm_dual_update(const SolverState& state, int n, const PhaseMatrix& phi_next,
                                 const PhaseMatrix& phin_next);

/// One full sweep: global step, then every selected block's local and dual steps.
std::pair<SolverState, IterationRecord> admm_iterate(const SolverState& state, IterationContext& context);

SolveResult solve_admm(const SolverConfig& config);

}  // namespace unimod
