#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "unimod/admm.hpp"
#include "unimod/diagnostics.hpp"
#include "unimod/gradient.hpp"
#include "unimod/metrics.hpp"
#include "unimod/pdmm.hpp"

#include <cmath>

using namespace unimod;

namespace {

SolverState single_lag_state() {
  SolverState s = admm_init(2, 2, LagSet({1}, 2), 9.0, 1, {true, TheoryChecks::Off});
  s.rho_n = {2.0};
  return s;
}

}  // namespace

TEST_CASE("residuals") {
  const SolverState s = admm_init(8, 2, LagSet::range(0, 2, 8), 9.0, 3);
  const ResidualReport same = residuals(s, s);
  CHECK(same.combined == 0.0);
  CHECK(same.dual_sq == 0.0);
  CHECK(same.primal_sq_per_lag.size() == 3);

  SolverState prev = single_lag_state();
  prev.phi = PhaseMatrix::Constant(2, 2, 1.0);
  SolverState next = prev;
  next.phi_n[0] = PhaseMatrix::Constant(2, 2, 2.0);
  const ResidualReport r = residuals(prev, next);
  CHECK(r.primal_sq_per_lag[0] == doctest::Approx(16.0));
  CHECK(r.dual_sq == 0.0);
  CHECK(r.combined == doctest::Approx(16.0));

  next.phi = PhaseMatrix::Constant(2, 2, 1.5);
  const ResidualReport both = residuals(prev, next);
  CHECK(both.dual_sq == doctest::Approx(1.0));
  CHECK(both.combined == doctest::Approx(both.primal_sq_per_lag[0] + 1.0 * both.dual_sq));
}

TEST_CASE("residuals see through a wrap") {
  SolverState prev = single_lag_state();
  prev.phi = PhaseMatrix::Constant(2, 2, kTwoPi - 0.01);
  prev.phi_n[0] = prev.phi;
  SolverState next = prev;
  next.phi = PhaseMatrix::Constant(2, 2, 0.01);
  next.phi_n[0] = PhaseMatrix::Constant(2, 2, kTwoPi + 0.01);
  const ResidualReport wrapped = residuals(prev, next, Projection::Wrap);
  CHECK(wrapped.dual_sq == doctest::Approx(4 * 0.02 * 0.02));
  CHECK(wrapped.primal_sq_per_lag[0] == doctest::Approx(4 * 4 * 0.02 * 0.02));
  const ResidualReport literal = residuals(prev, next, Projection::Clamp);
  CHECK(literal.dual_sq > 100.0);
}

TEST_CASE("termination threshold") {
  ResidualReport r;
  r.combined = 0.0;
  CHECK(termination_met(r, 1e-4));
  r.combined = 1e-4;
  CHECK(termination_met(r, 1e-4));
  r.combined = 2e-4;
  CHECK_FALSE(termination_met(r, 1e-4));
}

TEST_CASE("augmented Lagrangian") {
  const LagSet t = LagSet::range(0, 3, 10);
  const SolverState s = admm_init(10, 3, t, 9.0, 4);
  CHECK(augmented_lagrangian(s) == doctest::Approx(objective_total(s.phi, t)).epsilon(1e-12));

  const SolverState p = pdmm_init(10, 3, t, 9.0, 4);
  CHECK(augmented_lagrangian(p) == doctest::Approx(objective_total(p.phi, t)).epsilon(1e-12));

  Rng rng = make_stream(5, 0);
  SolverState moved = s;
  moved.phi_n[1] = oracle::random_phases(10, 3, rng);
  const Eigen::MatrixXd d = moved.phi_n[1] - moved.phi;
  double expect = 0.0;
  for (std::size_t b = 0; b < moved.blocks.size(); ++b)
    expect += lag_objective(phases_to_sequences(moved.phi_n[b]), moved.blocks[b]);
  expect += (moved.lambda_n[1].array() * d.array()).sum() + moved.rho_n[1] / 2.0 * d.squaredNorm();
  CHECK(augmented_lagrangian(moved) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("consensus gap") {
  SolverState s = admm_init(6, 2, LagSet::range(0, 2, 6), 9.0, 1);
  CHECK(consensus_gap(s) == 0.0);
  s.phi_n[2](0, 0) += 0.5;
  s.phi_n[1](1, 1) += 0.25;
  CHECK(consensus_gap(s) == doctest::Approx(0.5));
  s.phi_n[2](0, 0) += kTwoPi;
  CHECK(consensus_gap(s, Projection::Wrap) == doctest::Approx(0.5));
}

TEST_CASE("stationarity residual") {
  // Orthogonal columns minimize f_0 exactly.
  PhaseMatrix phi(2, 2);
  phi << 0.0, 0.0, 0.0, M_PI;
  const LagSet t({0}, 2);
  CHECK(stationarity_residual(phi, t, default_stationarity_step(t, 2, 2)) < 1e-9);
  CHECK(stationarity_residual(PhaseMatrix::Zero(4, 2), LagSet::range(0, 3, 4), 0.01) < 1e-12);

  Rng rng = make_stream(9, 0);
  const PhaseMatrix rand = oracle::random_phases(8, 3, rng);
  const LagSet tt = LagSet::range(0, 3, 8);
  const double eta = 1e-6;
  GradientMatrix sum = GradientMatrix::Zero(8, 3);
  for (int n : tt) sum += grad_fn(rand, n);
  // For small steps the residual is the gradient norm.
  CHECK(stationarity_residual(rand, tt, eta) == doctest::Approx(sum.norm()).epsilon(1e-6));
  CHECK(default_stationarity_step(tt, 8, 3) == doctest::Approx(1.0 / (4 * lipschitz_bound(8, 3))));
}

TEST_CASE("sufficient decrease coefficients") {
  const double l = 3.0;
  const auto [cb, ct] = sufficient_decrease_coefficients(9 * l, l);
  CHECK(cb == doctest::Approx(58 * l * l * l));
  CHECK(ct == doctest::Approx(573 * l * l * l));
  const auto [cb_thr, ct_thr] = sufficient_decrease_coefficients(8.41, 1.0);
  CHECK(std::abs(cb_thr) < 0.5);
  CHECK(ct_thr > 0.0);
  const auto [cb5, ct5] = sufficient_decrease_coefficients(5.0, 1.0);
  CHECK(cb5 == doctest::Approx(-122.0));
  (void)ct5;
}

TEST_CASE("sufficient decrease bound arithmetic") {
  SolverState prev = single_lag_state();
  prev.l_n = {1.0};
  prev.rho_n = {9.0};
  SolverState next = prev;
  next.phi_n[0] = (prev.phi_n[0].array() + 0.1).matrix();
  next.phi = (prev.phi.array() + 0.2).matrix();
  const double expect = (58.0 * 4 * 0.01 + 573.0 * 4 * 0.04) / (2.0 * 81.0);
  CHECK(sufficient_decrease_bound(prev, next) == doctest::Approx(expect));
}

TEST_CASE("multiplier mismatch") {
  const LagSet t = LagSet::range(0, 2, 6);
  SolverState s = admm_init(6, 2, t, 9.0, 2, {true, TheoryChecks::Off});
  for (std::size_t b = 0; b < s.blocks.size(); ++b) s.lambda_n[b] = -grad_fn(s.phi, s.blocks[b]);
  CHECK(multiplier_gradient_mismatch(s) < 1e-12);
  s.lambda_n[0].setZero();
  CHECK(multiplier_gradient_mismatch(s) > 0.1);
}
