#include "unimod/metrics.hpp"

#include <cmath>
#include <limits>

namespace unimod {

namespace {

void check_lags(const SequenceSet& x, const LagSet& t) {
  for (int n : t)
    if (n < 0 || n > x.rows() - 1)
      throw Error(ErrorKind::InvalidLag, "lag " + std::to_string(n) + " invalid for N = " +
                                             std::to_string(x.rows()));
}

}  // namespace

double isl(const SequenceSet& x, const LagSet& t) {
  check_lags(x, t);
  double total = 0.0;
  for (int n : t) {
    if (n == 0) continue;
    const CorrelationMatrix r = shift_correlation(x, n);
    total += r.diagonal().squaredNorm();
  }
  return total;
}

double ccl(const SequenceSet& x, const LagSet& t) {
  check_lags(x, t);
  double total = 0.0;
  for (int n : t) {
    const CorrelationMatrix r = shift_correlation(x, n);
    total += r.squaredNorm() - r.diagonal().squaredNorm();
  }
  return total;
}

double lag_objective(const SequenceSet& x, int n) {
  CorrelationMatrix r = shift_correlation(x, n);
  if (n == 0) r.diagonal().array() -= static_cast<double>(x.rows());
  return r.squaredNorm();
}

double objective_fn(const PhaseMatrix& phi, int n, const LagSet& t) {
  if (!t.contains(n))
    throw Error(ErrorKind::InvalidLag, "lag " + std::to_string(n) + " is not in the lag set");
  return lag_objective(phases_to_sequences(phi), n);
}

double objective_total(const SequenceSet& x, const LagSet& t) {
  check_lags(x, t);
  double total = 0.0;
  for (int n : t) total += lag_objective(x, n);
  return total;
}

double objective_total(const PhaseMatrix& phi, const LagSet& t) {
  return objective_total(phases_to_sequences(phi), t);
}

double correlation_level_db(const SequenceSet& x, int n) {
  const double energy = lag_objective(x, n);
  if (energy == 0.0) return -std::numeric_limits<double>::infinity();
  const double len = static_cast<double>(x.rows());
  return 20.0 * std::log10(energy / (static_cast<double>(x.cols()) * len * len));
}

}  // namespace unimod
