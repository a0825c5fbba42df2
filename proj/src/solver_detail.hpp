#pragma once

#include "unimod/solver.hpp"

#include <algorithm>
#include <execution>
#include <functional>
#include <numeric>

namespace unimod::detail {

/// Runs body(i) for i in [0, count). Each index must write only its own slots, so the
/// outcome does not depend on scheduling.
inline void for_each_block(std::size_t count, bool parallel, const std::function<void(std::size_t)>& body) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (parallel && count > 1)
    std::for_each(std::execution::par, idx.begin(), idx.end(), body);
  else
    std::for_each(idx.begin(), idx.end(), body);
}

/// Projection result plus the entrywise 2π-multiple that wrapping added (zero under clamp).
struct Projected {
  PhaseMatrix phi;
  Eigen::MatrixXd offset;
};

Projected project_with_offset(const PhaseMatrix& raw, Projection projection);

/// Adds the wrap offset to a carried local copy so Φ_n − Φ is preserved.
inline void recenter(PhaseMatrix& local, const Eigen::MatrixXd& offset) { local += offset; }

/// Seeded Φ¹, Λ_n¹ and per-block constants shared by both initializers.
SolverState init_state(Algorithm algorithm, int n_len, int m_count, const LagSet& t,
                       std::vector<int> blocks, double rho_multiplier, std::uint64_t seed,
                       bool zero_multipliers, TheoryChecks theory_checks);

using IterateFn = std::pair<SolverState, IterationRecord> (*)(const SolverState&, IterationContext&);

/// Shared driver: iterate, record, check theory bounds, stop on residual/budget/divergence.
SolveResult run_solver(const SolverConfig& config, SolverState initial, IterateFn iterate);

/// Per-block work must be large enough to amortize a task dispatch.
inline bool worth_parallel(const SolverState& state, bool requested) {
  const double work = static_cast<double>(state.n_len()) * state.m_count() * state.m_count();
  return requested && state.blocks.size() > 1 && work >= 2048.0;
}

}  // namespace unimod::detail
