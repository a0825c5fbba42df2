#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace unimod {

/// N×M real phases; rows are time samples, columns are sequences.
using PhaseMatrix = Eigen::MatrixXd;
/// N×M unit-modulus complex samples, X = exp(jΦ).
using SequenceSet = Eigen::MatrixXcd;
/// M×M correlation matrix at one lag.
using CorrelationMatrix = Eigen::MatrixXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorKind {
  InvalidInput,
  InvalidLag,
  DegenerateModel,
  Config,
  Io,
  Divergence,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// How Φ is brought back into [0, 2π) after an update.
enum class Projection { Wrap, Clamp };

/// Ordered set T of nonnegative lags, validated against a sequence length.
class LagSet {
 public:
  LagSet() = default;
  /// Throws InvalidLag if the lags are not strictly increasing within [0, n_len-1].
  LagSet(std::vector<int> lags, int n_len);

  /// Contiguous window [lo, hi].
  static LagSet range(int lo, int hi, int n_len);

  const std::vector<int>& lags() const noexcept { return lags_; }
  std::size_t size() const noexcept { return lags_.size(); }
  bool empty() const noexcept { return lags_.empty(); }
  bool include_zero() const noexcept { return !lags_.empty() && lags_.front() == 0; }
  bool contains(int n) const noexcept;
  int n_len() const noexcept { return n_len_; }
  /// The lags with 0 removed.
  std::vector<int> nonzero() const;

  auto begin() const noexcept { return lags_.begin(); }
  auto end() const noexcept { return lags_.end(); }

 private:
  std::vector<int> lags_;
  int n_len_ = 0;
};

SequenceSet phases_to_sequences(const PhaseMatrix& phi);

/// Elementwise reduction modulo 2π into [0, 2π). Throws InvalidInput on non-finite entries.
PhaseMatrix wrap_phase(const PhaseMatrix& phi);

/// Elementwise clamp into [0, 2π).
PhaseMatrix clamp_phase(const PhaseMatrix& phi);

PhaseMatrix project_phase(const PhaseMatrix& phi, Projection mode);

/// Shortest signed representative of a - b in (-π, π], entrywise.
PhaseMatrix angular_difference(const PhaseMatrix& a, const PhaseMatrix& b);

/// r_{ijn} = Σ_{k=n}^{N-1} conj(x_{k,i}) x_{k-n,j} (0-based k). Throws InvalidLag unless 0 ≤ n ≤ N-1.
CorrelationMatrix shift_correlation(const SequenceSet& x, int n);

/// R_{-n} = R_n^H.
CorrelationMatrix negative_lag_correlation(const SequenceSet& x, int n);

}  // namespace unimod
