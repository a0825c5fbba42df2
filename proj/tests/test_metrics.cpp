#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "unimod/metrics.hpp"

#include <cmath>
#include <limits>

using namespace unimod;

namespace {

double brute_isl(const PhaseMatrix& phi, const LagSet& t) {
  double s = 0.0;
  for (int n : t)
    if (n != 0)
      for (int i = 0; i < phi.cols(); ++i) s += std::norm(oracle::corr(phi, i, i, n));
  return s;
}

double brute_ccl(const PhaseMatrix& phi, const LagSet& t) {
  double s = 0.0;
  for (int n : t)
    for (int i = 0; i < phi.cols(); ++i)
      for (int j = 0; j < phi.cols(); ++j)
        if (i != j) s += std::norm(oracle::corr(phi, i, j, n));
  return s;
}

SequenceSet column(std::initializer_list<double> re) {
  SequenceSet x(static_cast<Eigen::Index>(re.size()), 1);
  Eigen::Index i = 0;
  for (double v : re) x(i++, 0) = v;
  return x;
}

}  // namespace

TEST_CASE("isl") {
  CHECK(isl(column({1, 1, 1}), LagSet::range(0, 2, 3)) == doctest::Approx(5.0));
  Rng rng = make_stream(11, 0);
  const PhaseMatrix phi = oracle::random_phases(8, 2, rng);
  CHECK(isl(phases_to_sequences(phi), LagSet({0}, 8)) == 0.0);
  const LagSet t = LagSet::range(0, 3, 8);
  CHECK(std::abs(isl(phases_to_sequences(phi), t) - brute_isl(phi, t)) < 1e-10);
}

TEST_CASE("ccl") {
  CHECK(ccl(column({1, -1, 1}), LagSet::range(0, 2, 3)) == 0.0);
  SequenceSet orth(2, 2);
  orth << 1, 1, 1, -1;
  CHECK(ccl(orth, LagSet({0}, 2)) == doctest::Approx(0.0));
  CHECK(ccl(SequenceSet::Ones(2, 2), LagSet({0}, 2)) == doctest::Approx(8.0));
  Rng rng = make_stream(12, 0);
  const PhaseMatrix phi = oracle::random_phases(8, 3, rng);
  const LagSet t = LagSet::range(0, 5, 8);
  CHECK(std::abs(ccl(phases_to_sequences(phi), t) - brute_ccl(phi, t)) < 1e-10);
}

TEST_CASE("objective_fn") {
  const PhaseMatrix zero = PhaseMatrix::Zero(2, 2);
  const LagSet t = LagSet::range(0, 1, 2);
  CHECK(objective_fn(zero, 0, t) == doctest::Approx(8.0));
  CHECK(objective_fn(zero, 1, t) == doctest::Approx(4.0));
  CHECK_THROWS_AS(objective_fn(zero, 1, LagSet({0}, 2)), Error);

  Rng rng = make_stream(4, 0);
  const PhaseMatrix single = oracle::random_phases(7, 1, rng);
  CHECK(objective_fn(single, 0, LagSet({0}, 7)) < 1e-24);
  for (int n = 0; n < 5; ++n) {
    const PhaseMatrix phi = oracle::random_phases(7, 3, rng);
    CHECK(objective_fn(phi, n, LagSet::range(0, 6, 7)) == doctest::Approx(oracle::lag_value(phi, n)).epsilon(1e-12));
  }
}

TEST_CASE("objective_total") {
  CHECK(objective_total(PhaseMatrix(PhaseMatrix::Zero(2, 2)), LagSet::range(0, 1, 2)) == doctest::Approx(12.0));
  Rng rng = make_stream(5, 0);
  CHECK(objective_total(oracle::random_phases(6, 1, rng), LagSet({0}, 6)) < 1e-24);
  const PhaseMatrix phi = oracle::random_phases(8, 3, rng);
  const LagSet t = LagSet::range(0, 3, 8);
  const SequenceSet x = phases_to_sequences(phi);
  const double total = objective_total(phi, t);
  CHECK(std::abs(total - (isl(x, t) + ccl(x, t))) <= 1e-9 * total);
  CHECK(objective_total(x, t) == total);
}

TEST_CASE("correlation_level_db") {
  const SequenceSet ones = SequenceSet::Ones(2, 2);
  CHECK(correlation_level_db(ones, 1) == doctest::Approx(20.0 * std::log10(0.5)));
  CHECK(correlation_level_db(ones, 1) == doctest::Approx(-6.0206).epsilon(1e-5));
  SequenceSet orth(2, 2);
  orth << 1, 1, 1, -1;
  const double level = correlation_level_db(orth, 0);
  CHECK(std::isinf(level));
  CHECK(level < 0);
}

TEST_CASE("metrics ignore per-column phase offsets") {
  Rng rng = make_stream(6, 0);
  for (int s = 0; s < 10; ++s) {
    const PhaseMatrix phi = oracle::random_phases(12, 3, rng);
    PhaseMatrix shifted = phi;
    for (int m = 0; m < 3; ++m) shifted.col(m).array() += 7.0 * uniform01(rng) - 3.0;
    const LagSet t = LagSet::range(0, 6, 12);
    const SequenceSet a = phases_to_sequences(phi), b = phases_to_sequences(shifted);
    CHECK(isl(b, t) == doctest::Approx(isl(a, t)).epsilon(1e-9));
    CHECK(ccl(b, t) == doctest::Approx(ccl(a, t)).epsilon(1e-9));
    CHECK(objective_total(b, t) == doctest::Approx(objective_total(a, t)).epsilon(1e-9));
  }
}
