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

SolverConfig base(Algorithm alg, std::uint64_t seed, long iters) {
  SolverConfig c;
  c.n_len = 24;
  c.m_count = 3;
  c.lags = LagSet::range(0, 6, 24);
  c.algorithm = alg;
  c.seed = seed;
  c.max_iter = iters;
  c.parallel = false;
  return c;
}

bool same_run(const SolveResult& a, const SolveResult& b) {
  if (!(a.phi == b.phi) || a.trace.size() != b.trace.size() || a.reason != b.reason) return false;
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    const auto &x = a.trace[i], &y = b.trace[i];
    if (x.k != y.k || x.objective != y.objective || x.aug_lagrangian != y.aug_lagrangian ||
        x.combined_residual != y.combined_residual || x.consensus_gap != y.consensus_gap)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("zero-lag diagonal equals N") {
  Rng rng = make_stream(101, 0);
  for (int s = 0; s < 50; ++s) {
    const int n_len = 2 + static_cast<int>(uniform01(rng) * 60);
    const SequenceSet x = phases_to_sequences(oracle::random_phases(n_len, 4, rng));
    const CorrelationMatrix r = shift_correlation(x, 0);
    CHECK((r.diagonal().array() - static_cast<double>(n_len)).abs().maxCoeff() <= 1e-9 * n_len);
  }
}

TEST_CASE("hermitian identity against brute force") {
  Rng rng = make_stream(102, 0);
  for (int s = 0; s < 40; ++s) {
    const int n_len = 1 + s % 8;
    const int m_count = 1 + s % 4;
    const PhaseMatrix phi = oracle::random_phases(n_len, m_count, rng);
    const SequenceSet x = phases_to_sequences(phi);
    for (int n = 0; n < n_len; ++n) {
      CHECK(negative_lag_correlation(x, n) == CorrelationMatrix(shift_correlation(x, n).adjoint()));
      for (int i = 0; i < m_count; ++i)
        for (int j = 0; j < m_count; ++j)
          CHECK(std::abs(negative_lag_correlation(x, n)(i, j) - oracle::corr(phi, i, j, -n)) < 1e-12);
    }
  }
}

TEST_CASE("objective equals isl plus ccl") {
  Rng rng = make_stream(103, 0);
  for (int s = 0; s < 50; ++s) {
    const int n_len = 2 + s % 15;
    const int m_count = 1 + s % 4;
    const int hi = static_cast<int>(uniform01(rng) * n_len);
    const SequenceSet x = phases_to_sequences(oracle::random_phases(n_len, m_count, rng));
    const LagSet t = LagSet::range(0, hi, n_len);
    const double total = objective_total(x, t);
    CHECK(std::abs(total - isl(x, t) - ccl(x, t)) <= 1e-9 * std::max(total, 1.0));
  }
}

TEST_CASE("residual bookkeeping") {
  for (Algorithm alg : {Algorithm::Admm, Algorithm::Pdmm}) {
    SolverState s = alg == Algorithm::Admm ? admm_init(12, 3, LagSet::range(0, 4, 12), 9.0, 5)
                                           : pdmm_init(12, 3, LagSet::range(0, 4, 12), 9.0, 5);
    IterationContext ctx;
    for (int it = 0; it < 20; ++it) {
      auto [next, rec] = alg == Algorithm::Admm ? admm_iterate(s, ctx) : pdmm_iterate(s, ctx);
      double sum = 0.0;
      for (double p : rec.residual.primal_sq_per_lag) sum += p;
      CHECK(rec.residual.primal_sq_per_lag.size() == s.blocks.size());
      CHECK(rec.residual.combined == doctest::Approx(sum + s.blocks.size() * rec.residual.dual_sq));
      CHECK(next.phi.minCoeff() >= 0.0);
      CHECK(next.phi.maxCoeff() < kTwoPi);
      CHECK(next.k == s.k + 1);
      s = std::move(next);
    }
  }
}

TEST_CASE("trace counters increase") {
  const SolveResult r = solve(base(Algorithm::Pdmm, 3, 50));
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].k == r.trace[i - 1].k + 1);
}

TEST_CASE("acceleration switches at neutral settings change nothing") {
  for (Algorithm alg : {Algorithm::Admm, Algorithm::Pdmm}) {
    const SolveResult plain = solve(base(alg, 9, 120));
    SolverConfig full = base(alg, 9, 120);
    full.accel.sbcd_enabled = true;
    full.accel.sbcd_probability = 1.0;
    CHECK(same_run(plain, solve(full)));
    SolverConfig still = base(alg, 9, 120);
    still.accel.agd_enabled = true;
    still.accel.agd_momentum = 0.0;
    CHECK(same_run(plain, solve(still)));
  }
}

TEST_CASE("sampling does not disturb initialization") {
  SolverConfig plain = base(Algorithm::Admm, 10, 0);
  SolverConfig sampled = plain;
  sampled.accel.sbcd_enabled = true;
  sampled.accel.sbcd_probability = 0.3;
  CHECK(solve(plain).phi == solve(sampled).phi);
}

TEST_CASE("sampled and momentum runs stay deterministic and bounded") {
  for (Algorithm alg : {Algorithm::Admm, Algorithm::Pdmm}) {
    SolverConfig c = base(alg, 11, 300);
    c.accel.sbcd_enabled = true;
    c.accel.agd_enabled = true;
    c.accel.agd_momentum = 0.5;
    const SolveResult a = solve(c);
    CHECK(same_run(a, solve(c)));
    CHECK(a.reason != StopReason::Diverged);
    CHECK(a.trace.back().objective < a.initial_objective);
  }
}

TEST_CASE("Lagrangian lower bound across seeds") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SolveResult r = solve(base(Algorithm::Admm, seed, 200));
    CHECK(r.theory.lower_bound_violations == 0);
    CHECK(r.theory.monotonicity_violations == 0);
    CHECK(r.theory.min_aug_lagrangian >= 0.0);
  }
}

TEST_CASE("strict checks accept the default penalty") {
  SolverConfig c = base(Algorithm::Admm, 2, 200);
  c.theory_checks = TheoryChecks::Strict;
  CHECK(solve(c).reason == StopReason::IterationBudget);
  c.rho_multiplier = 4.0;
  CHECK_THROWS_AS(solve(c), Error);
}

TEST_CASE("wrap frame does not change the objective") {
  Rng rng = make_stream(104, 0);
  for (int s = 0; s < 20; ++s) {
    const PhaseMatrix phi = oracle::random_phases(10, 3, rng);
    PhaseMatrix far = phi;
    for (Eigen::Index i = 0; i < far.size(); ++i) far(i) += kTwoPi * std::floor(10.0 * uniform01(rng) - 5.0);
    const LagSet t = LagSet::range(0, 9, 10);
    CHECK(objective_total(far, t) == doctest::Approx(objective_total(phi, t)).epsilon(1e-9));
    for (int n : {0, 3, 9}) CHECK((grad_fn(far, n) - grad_fn(phi, n)).cwiseAbs().maxCoeff() < 1e-8);
  }
}
