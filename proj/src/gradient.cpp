#include "unimod/gradient.hpp"

#include "unimod/metrics.hpp"

namespace unimod {

GradientEval grad_fn_with_value(const SequenceSet& x, int n) {
  const auto len = x.rows();
  const auto cols = x.cols();
  if (cols < 2)
    throw Error(ErrorKind::DegenerateModel, "gradient model requires at least two sequences");
  CorrelationMatrix e = shift_correlation(x, n);
  if (n == 0) e.diagonal().array() -= static_cast<double>(len);

  // φ_{p,m} enters R_n through conj(x_{p,m}) in row m (sample p, paired with x_{p-n,·}) and
  // through x_{p,m} in column m (paired with x_{p+n,·}). Only row/column m of E contribute:
  //   ∂f_n/∂φ_{p,m} = 2 Im(conj(x_{p,m}) · ([X↓n E^H]_{p,m} + [X↑n E]_{p,m})).
  const auto overlap = len - n;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(len, cols);
  acc.bottomRows(overlap).noalias() += x.topRows(overlap) * e.adjoint();
  acc.topRows(overlap).noalias() += x.bottomRows(overlap) * e;

  GradientEval out{GradientMatrix(len, cols), e.squaredNorm()};
  for (Eigen::Index m = 0; m < cols; ++m)
    for (Eigen::Index p = 0; p < len; ++p)
      out.grad(p, m) = 2.0 * (std::conj(x(p, m)) * acc(p, m)).imag();
  return out;
}

GradientMatrix grad_fn(const SequenceSet& x, int n) { return grad_fn_with_value(x, n).grad; }

GradientMatrix grad_fn(const PhaseMatrix& phi, int n) {
  if (phi.cols() < 2)
    throw Error(ErrorKind::DegenerateModel, "gradient model requires at least two sequences");
  return grad_fn(phases_to_sequences(phi), n);
}

GradientMatrix grad_fd_oracle(const PhaseMatrix& phi, int n, double h) {
  if (!(h >= 1e-8 && h <= 1e-3))
    throw Error(ErrorKind::InvalidInput, "finite-difference step must lie in [1e-8, 1e-3]");
  GradientMatrix g(phi.rows(), phi.cols());
  PhaseMatrix probe = phi;
  for (Eigen::Index m = 0; m < phi.cols(); ++m) {
    for (Eigen::Index i = 0; i < phi.rows(); ++i) {
      const double saved = probe(i, m);
      probe(i, m) = saved + h;
      const double up = lag_objective(phases_to_sequences(probe), n);
      probe(i, m) = saved - h;
      const double down = lag_objective(phases_to_sequences(probe), n);
      probe(i, m) = saved;
      g(i, m) = (up - down) / (2.0 * h);
    }
  }
  return g;
}

double lipschitz_bound(int n_len, int m_count) {
  if (m_count < 2)
    throw Error(ErrorKind::DegenerateModel, "Lipschitz bound is degenerate for fewer than two sequences");
  if (n_len < 1) throw Error(ErrorKind::InvalidInput, "sequence length must be positive");
  return 4.0 * (m_count - 1) * (n_len + 1.0);
}

}  // namespace unimod
