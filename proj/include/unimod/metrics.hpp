#pragma once

#include "unimod/core.hpp"

namespace unimod {

/// Integrated sidelobe level over the positive lags of `t`.
double isl(const SequenceSet& x, const LagSet& t);

/// Cross-correlation level over ordered pairs i != j and every lag of `t`.
double ccl(const SequenceSet& x, const LagSet& t);

/// ‖R_n − N·I·δ_n‖_F² for sequences already in complex form. No membership check.
double lag_objective(const SequenceSet& x, int n);

/// f_n(Φ). Throws InvalidLag when n ∉ t.
double objective_fn(const PhaseMatrix& phi, int n, const LagSet& t);

/// Σ_{n∈T} f_n(Φ).
double objective_total(const PhaseMatrix& phi, const LagSet& t);
double objective_total(const SequenceSet& x, const LagSet& t);

/// 20·log10(‖R_n − N·I·δ_n‖_F² / (M·N²)); -infinity when the norm is exactly zero.
double correlation_level_db(const SequenceSet& x, int n);

}  // namespace unimod
