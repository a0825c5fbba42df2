#pragma once

#include "unimod/core.hpp"

#include <random>

namespace unimod {

/// Stochastic block selection and momentum extrapolation. Both off by default.
struct AccelConfig {
  bool sbcd_enabled = false;
  double sbcd_probability = 0.5;  ///< (0, 1]
  bool agd_enabled = false;
  double agd_momentum = 0.0;  ///< [0, 1)

  /// Throws Config on out-of-range values.
  void validate() const;
};

/// Generator used for every seeded stream in the solvers.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits, independent of the standard library's distributions.
double uniform01(Rng& rng);

/// Seeds an independent stream for `tag` from a master seed (splitmix64 mixing).
Rng make_stream(std::uint64_t master_seed, std::uint64_t tag);

/// Stream tags for the documented seed split.
inline constexpr std::uint64_t kStreamInitPhases = 1;
inline constexpr std::uint64_t kStreamInitMultipliers = 2;
inline constexpr std::uint64_t kStreamBlockSampling = 3;

/// Bernoulli(p) subset of block indices [0, count). Empty draws are redrawn.
/// Returns a mask of length `count`. p = 1 returns the full set without consuming randomness.
std::vector<bool> sbcd_select_mask(std::size_t count, double p, Rng& rng);

/// Lag-set form of the selection.
LagSet sbcd_select(const LagSet& t, double p, Rng& rng);

/// Φ^k + ω·d with d the shortest angular step from Φ^{k-1} to Φ^k, not projected.
PhaseMatrix agd_extrapolate_raw(const PhaseMatrix& phi_k, const PhaseMatrix& phi_prev, double omega);

/// wrap(Φ^k + ω·d).
PhaseMatrix agd_extrapolate(const PhaseMatrix& phi_k, const PhaseMatrix& phi_prev, double omega);

}  // namespace unimod
