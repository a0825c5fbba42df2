#pragma once

#include "unimod/admm.hpp"

namespace unimod {

/// Like admm_init but with blocks T\{0}; the f_0 term is carried by the global step.
/// Throws Config if 0 ∉ t.
SolverState pdmm_init(int n_len, int m_count, const LagSet& t, double rho_multiplier,
                      std::uint64_t seed, const InitOptions& options = {});

/// P((L_0Φ^k − ∇f_0(Φ^k) + Σ(Λ_n^k + ρ_nΦ_n^k)) / (L_0 + Σρ_n)).
PhaseMatrix pdmm_phi_update(const SolverState& state, Projection projection = Projection::Wrap);

/// (L_nΦ_n^k + ρ_nΦ^k − Λ_n^k − ∇f_n(Φ_n^k)) / (L_n + ρ_n). Throws InvalidLag for n = 0.
PhaseMatrix pdmm_phin_update(const SolverState& state, int n);

/// Λ_n^k + ρ_n(Φ_n^{k+1} − Φ^k).
Eigen::MatrixXd pdmm_dual_update(const SolverState& state, int n, const PhaseMatrix& phin_next);

/// All blocks computed from the iteration-k snapshot, then committed together.
std::pair<SolverState, IterationRecord> pdmm_iterate(const SolverState& state, IterationContext& context);

/// Aborts with StopReason::Diverged once the objective exceeds 10³× its initial value.
SolveResult solve_pdmm(const SolverConfig& config);

}  // namespace unimod
