#pragma once

#include "unimod/solver.hpp"

#include <utility>

namespace unimod {

/// Differences are taken as shortest angular differences under wrap projection and
/// literally under clamp. The sum ranges over the state's blocks, so T\{0} for PDMM.
ResidualReport residuals(const SolverState& prev, const SolverState& next,
                         Projection projection = Projection::Wrap);

/// combined ≤ ε.
bool termination_met(const ResidualReport& report, double epsilon);

/// Σ_blocks (f_n(Φ_n) + ⟨Λ_n, Φ_n − Φ⟩ + ρ_n/2 ‖Φ_n − Φ‖²), plus f_0(Φ) for PDMM states.
double augmented_lagrangian(const SolverState& state);

/// Same sum with caller-supplied f_n(Φ_n) values (one per block) and f_0(Φ) (PDMM only).
double augmented_lagrangian(const SolverState& state, const std::vector<double>& block_values,
                            double f0_value);

/// max over blocks of ‖Φ_n − Φ‖_F.
double consensus_gap(const SolverState& state, Projection projection = Projection::Wrap);

/// Projected-gradient residual ‖P(Φ − η Σ∇f_n(Φ)) − Φ‖_F / η. Zero exactly at first-order
/// stationary points. Wrap mode measures the shortest angular displacement.
double stationarity_residual(const PhaseMatrix& phi, const LagSet& t, double eta,
                             Projection projection = Projection::Wrap);

/// Default step 1/Σ_n L_n.
double default_stationarity_step(const LagSet& t, int n_len, int m_count);

/// (c̄, c̃) = (ρ³ − 7ρ²L − 8ρL² − 32L³, ρ³ − 12ρL² − 48L³).
std::pair<double, double> sufficient_decrease_coefficients(double rho, double l);

/// Σ_n (c̄_n‖ΔΦ_n‖² + c̃_n‖ΔΦ‖²)/(2ρ_n²), the guaranteed per-iteration Lagrangian drop.
double sufficient_decrease_bound(const SolverState& prev, const SolverState& next,
                                 Projection projection = Projection::Wrap);

/// Max over blocks of ‖Λ_n + ∇f_n(Φ)‖_F / (1 + ‖∇f_n(Φ)‖_F); small at an ADMM limit point.
double multiplier_gradient_mismatch(const SolverState& state);

}  // namespace unimod
