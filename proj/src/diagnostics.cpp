#include "unimod/diagnostics.hpp"

#include "unimod/gradient.hpp"
#include "unimod/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace unimod {

namespace {

PhaseMatrix phase_delta(const PhaseMatrix& a, const PhaseMatrix& b, Projection projection) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::InvalidInput, "phase matrices differ in shape");
  return projection == Projection::Wrap ? angular_difference(a, b) : PhaseMatrix(a - b);
}

void check_compatible(const SolverState& prev, const SolverState& next) {
  if (prev.blocks != next.blocks || prev.phi.rows() != next.phi.rows() ||
      prev.phi.cols() != next.phi.cols())
    throw Error(ErrorKind::InvalidInput, "residuals need two states of the same problem");
}

}  // namespace

ResidualReport residuals(const SolverState& prev, const SolverState& next, Projection projection) {
  check_compatible(prev, next);
  ResidualReport report;
  report.primal_sq_per_lag.reserve(next.blocks.size());
  for (std::size_t b = 0; b < next.blocks.size(); ++b) {
    const double rho = next.rho_n[b];
    const double sq = phase_delta(next.phi_n[b], prev.phi, projection).squaredNorm() * rho * rho;
    report.primal_sq_per_lag.push_back(sq);
    report.combined += sq;
  }
  report.dual_sq = phase_delta(next.phi, prev.phi, projection).squaredNorm();
  report.combined += static_cast<double>(next.blocks.size()) * report.dual_sq;
  return report;
}

bool termination_met(const ResidualReport& report, double epsilon) { return report.combined <= epsilon; }

double augmented_lagrangian(const SolverState& state, const std::vector<double>& block_values,
                            double f0_value) {
  double total = state.has_f0_term() ? f0_value : 0.0;
  for (std::size_t b = 0; b < state.blocks.size(); ++b) {
    const Eigen::MatrixXd gap = state.phi_n[b] - state.phi;
    total += block_values[b] + state.lambda_n[b].cwiseProduct(gap).sum() +
             0.5 * state.rho_n[b] * gap.squaredNorm();
  }
  return total;
}

double augmented_lagrangian(const SolverState& state) {
  std::vector<double> values;
  values.reserve(state.blocks.size());
  for (std::size_t b = 0; b < state.blocks.size(); ++b)
    values.push_back(lag_objective(phases_to_sequences(state.phi_n[b]), state.blocks[b]));
  const double f0 = state.has_f0_term() ? lag_objective(phases_to_sequences(state.phi), 0) : 0.0;
  return augmented_lagrangian(state, values, f0);
}

double consensus_gap(const SolverState& state, Projection projection) {
  double gap = 0.0;
  for (const auto& local : state.phi_n) gap = std::max(gap, phase_delta(local, state.phi, projection).norm());
  return gap;
}

double stationarity_residual(const PhaseMatrix& phi, const LagSet& t, double eta, Projection projection) {
  if (!(eta > 0.0)) throw Error(ErrorKind::InvalidInput, "stationarity step must be positive");
  const SequenceSet x = phases_to_sequences(phi);
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(phi.rows(), phi.cols());
  for (int n : t) total += grad_fn(x, n);
  const PhaseMatrix stepped = project_phase(phi - eta * total, projection);
  return phase_delta(stepped, phi, projection).norm() / eta;
}

double default_stationarity_step(const LagSet& t, int n_len, int m_count) {
  return 1.0 / (static_cast<double>(t.size()) * lipschitz_bound(n_len, m_count));
}

std::pair<double, double> sufficient_decrease_coefficients(double rho, double l) {
  const double c_bar = rho * rho * rho - 7.0 * rho * rho * l - 8.0 * rho * l * l - 32.0 * l * l * l;
  const double c_tilde = rho * rho * rho - 12.0 * rho * l * l - 48.0 * l * l * l;
  return {c_bar, c_tilde};
}

double sufficient_decrease_bound(const SolverState& prev, const SolverState& next, Projection projection) {
  check_compatible(prev, next);
  const double d_phi = phase_delta(next.phi, prev.phi, projection).squaredNorm();
  double bound = 0.0;
  for (std::size_t b = 0; b < next.blocks.size(); ++b) {
    const auto [c_bar, c_tilde] = sufficient_decrease_coefficients(next.rho_n[b], next.l_n[b]);
    const double d_local = phase_delta(next.phi_n[b], prev.phi_n[b], projection).squaredNorm();
    bound += (c_bar * d_local + c_tilde * d_phi) / (2.0 * next.rho_n[b] * next.rho_n[b]);
  }
  return bound;
}

double multiplier_gradient_mismatch(const SolverState& state) {
  const SequenceSet x = phases_to_sequences(state.phi);
  double worst = 0.0;
  for (std::size_t b = 0; b < state.blocks.size(); ++b) {
    const GradientMatrix g = grad_fn(x, state.blocks[b]);
    worst = std::max(worst, (state.lambda_n[b] + g).norm() / (1.0 + g.norm()));
  }
  return worst;
}

}  // namespace unimod
