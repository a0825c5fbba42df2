#pragma once

#include "unimod/core.hpp"

namespace unimod {

/// ∂f_n/∂φ_{i,m}, N×M.
using GradientMatrix = Eigen::MatrixXd;

/// Analytic gradient of f_n at Φ in O(M²N). Throws DegenerateModel for M < 2, InvalidLag for bad n.
GradientMatrix grad_fn(const PhaseMatrix& phi, int n);

/// Same as grad_fn, reusing X = exp(jΦ) already formed by the caller.
GradientMatrix grad_fn(const SequenceSet& x, int n);

struct GradientEval {
  GradientMatrix grad;
  double value = 0.0;  ///< f_n at the same point, a by-product of forming R_n
};

GradientEval grad_fn_with_value(const SequenceSet& x, int n);

/// Central finite differences of f_n with step h ∈ [1e-8, 1e-3]. Test oracle; O(N²M³) per call.
GradientMatrix grad_fd_oracle(const PhaseMatrix& phi, int n, double h);

/// The gradient Lipschitz bound 4(M−1)(N+1), shared by every lag.
double lipschitz_bound(int n_len, int m_count);

}  // namespace unimod
