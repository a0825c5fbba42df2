#include "unimod/core.hpp"

#include <algorithm>
#include <cmath>

namespace unimod {

LagSet::LagSet(std::vector<int> lags, int n_len) : lags_(std::move(lags)), n_len_(n_len) {
  if (n_len_ < 1) throw Error(ErrorKind::InvalidLag, "sequence length must be positive");
  for (std::size_t i = 0; i < lags_.size(); ++i) {
    const int n = lags_[i];
    if (n < 0 || n > n_len_ - 1)
      throw Error(ErrorKind::InvalidLag, "lag " + std::to_string(n) + " outside [0, " +
                                             std::to_string(n_len_ - 1) + "]");
    if (i > 0 && lags_[i - 1] >= n)
      throw Error(ErrorKind::InvalidLag, "lags must be strictly increasing without duplicates");
  }
}

LagSet LagSet::range(int lo, int hi, int n_len) {
  if (lo > hi) throw Error(ErrorKind::InvalidLag, "empty lag window");
  std::vector<int> lags;
  for (int n = lo; n <= hi; ++n) lags.push_back(n);
  return LagSet(std::move(lags), n_len);
}

bool LagSet::contains(int n) const noexcept {
  return std::binary_search(lags_.begin(), lags_.end(), n);
}

std::vector<int> LagSet::nonzero() const {
  std::vector<int> out;
  for (int n : lags_)
    if (n != 0) out.push_back(n);
  return out;
}

SequenceSet phases_to_sequences(const PhaseMatrix& phi) {
  SequenceSet x(phi.rows(), phi.cols());
  for (Eigen::Index m = 0; m < phi.cols(); ++m)
    for (Eigen::Index i = 0; i < phi.rows(); ++i)
      x(i, m) = {std::cos(phi(i, m)), std::sin(phi(i, m))};
  return x;
}

namespace {

double wrap_scalar(double v) {
  double r = std::fmod(v, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative plus 2π can round up to exactly 2π.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

PhaseMatrix wrap_phase(const PhaseMatrix& phi) {
  if (!phi.allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite phase entry");
  return phi.unaryExpr([](double v) { return wrap_scalar(v); });
}

PhaseMatrix clamp_phase(const PhaseMatrix& phi) {
  if (!phi.allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite phase entry");
  const double top = std::nextafter(kTwoPi, 0.0);
  return phi.unaryExpr([top](double v) { return std::clamp(v, 0.0, top); });
}

PhaseMatrix project_phase(const PhaseMatrix& phi, Projection mode) {
  return mode == Projection::Wrap ? wrap_phase(phi) : clamp_phase(phi);
}

PhaseMatrix angular_difference(const PhaseMatrix& a, const PhaseMatrix& b) {
  return (a - b).unaryExpr([](double d) {
    double r = std::remainder(d, kTwoPi);  // [-π, π]
    if (r <= -std::numbers::pi) r += kTwoPi;
    return r;
  });
}

CorrelationMatrix shift_correlation(const SequenceSet& x, int n) {
  const auto len = x.rows();
  if (n < 0 || n > len - 1)
    throw Error(ErrorKind::InvalidLag,
                "lag " + std::to_string(n) + " outside [0, " + std::to_string(len - 1) + "]");
  const auto overlap = len - n;
  return x.bottomRows(overlap).adjoint() * x.topRows(overlap);
}

CorrelationMatrix negative_lag_correlation(const SequenceSet& x, int n) {
  return shift_correlation(x, n).adjoint();
}

}  // namespace unimod
