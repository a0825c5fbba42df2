#pragma once

#include "unimod/accel.hpp"
#include "unimod/core.hpp"

#include <optional>
#include <string_view>

namespace unimod {

enum class Algorithm { Admm, Pdmm };
enum class TheoryChecks { Off, Report, Strict };
enum class StopReason { Converged, IterationBudget, Diverged, TheoryViolation };

std::string_view to_string(Algorithm a);
std::string_view to_string(TheoryChecks t);
std::string_view to_string(StopReason r);
std::string_view to_string(Projection p);

/// Everything a solver run needs. Sizes and lags are validated by `validate()`.
struct SolverConfig {
  int n_len = 0;
  int m_count = 0;
  LagSet lags;
  Algorithm algorithm = Algorithm::Admm;
  double rho_multiplier = 9.0;
  double epsilon = 1e-4;
  long max_iter = 50000;
  std::uint64_t seed = 1;
  AccelConfig accel;
  Projection projection = Projection::Wrap;
  TheoryChecks theory_checks = TheoryChecks::Report;
  bool zero_multiplier_init = false;
  bool parallel = true;

  void validate() const;
};

/// Consensus variables. `blocks` lists the lags that own a local copy Φ_n:
/// every lag of T for ADMM, T\{0} for PDMM (whose f_0 lives in the Φ-step).
struct SolverState {
  Algorithm algorithm = Algorithm::Admm;
  LagSet lags;
  PhaseMatrix phi;
  std::vector<int> blocks;
  std::vector<PhaseMatrix> phi_n;
  std::vector<Eigen::MatrixXd> lambda_n;
  std::vector<double> rho_n;
  std::vector<double> l_n;
  double l_0 = 0.0;  ///< PDMM only: Lipschitz constant used in the Φ-step
  long k = 1;

  int n_len() const { return static_cast<int>(phi.rows()); }
  int m_count() const { return static_cast<int>(phi.cols()); }
  /// Index into `blocks` for lag n. Throws InvalidLag if n has no block.
  std::size_t block_index(int n) const;
  bool has_f0_term() const { return algorithm == Algorithm::Pdmm; }
};

/// Primal/dual residuals between consecutive iterates.
struct ResidualReport {
  std::vector<double> primal_sq_per_lag;  ///< ‖ρ_n(Φ_n^{k+1} − Φ^k)‖², one per block
  double dual_sq = 0.0;                   ///< ‖Φ^{k+1} − Φ^k‖²
  double combined = 0.0;                  ///< Σ primal + |blocks|·dual
};

/// One row of the convergence trace.
struct ConvergenceRecord {
  long k = 0;
  double objective = 0.0;
  double aug_lagrangian = 0.0;
  double combined_residual = 0.0;
  double consensus_gap = 0.0;
  double wall_ms = 0.0;
};

/// Counters for the runtime theory checks.
struct TheoryReport {
  bool rho_rule_satisfied = true;  ///< ρ_n ≥ 9 L_n for every block
  long iterations_checked = 0;
  long monotonicity_violations = 0;     ///< augmented Lagrangian increased beyond slack
  long sufficient_decrease_violations = 0;
  long lower_bound_violations = 0;      ///< augmented Lagrangian < 0 beyond slack
  double max_relative_increase = 0.0;
  double min_aug_lagrangian = 0.0;
  long agd_restarts = 0;
};

/// Per-run mutable state that is not part of the consensus variables: the block-sampling
/// stream and the momentum history. Owned by the orchestrator, one per run.
struct IterationContext {
  Projection projection = Projection::Wrap;
  AccelConfig accel;
  Rng sampling;
  double momentum = 0.0;            ///< effective AGD momentum; dropped to 0 by the restart rule
  std::optional<PhaseMatrix> phi_prev;  ///< Φ^{k-1} for extrapolation
  bool parallel = true;

  static IterationContext from_config(const SolverConfig& config);
};

/// Everything one iteration produces besides the new state.
struct IterationRecord {
  ConvergenceRecord record;
  std::vector<double> block_values;  ///< f_n(Φ_n^{k+1}) per block
  double f0_value = 0.0;             ///< f_0(Φ^{k+1}), PDMM only
  std::vector<bool> selected;        ///< blocks updated this iteration
  ResidualReport residual;
};

struct SolveResult {
  PhaseMatrix phi;
  std::vector<ConvergenceRecord> trace;
  StopReason reason = StopReason::IterationBudget;
  SolverState final_state;
  TheoryReport theory;
  double initial_objective = 0.0;
};

/// Dispatches to solve_admm or solve_pdmm.
SolveResult solve(const SolverConfig& config);

}  // namespace unimod
