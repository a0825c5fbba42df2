#include "unimod/verify.hpp"

#include "unimod/accel.hpp"
#include "unimod/io.hpp"
#include "unimod/metrics.hpp"
#include "unimod/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace unimod {

namespace {

constexpr std::uint64_t kVerifyStream = 0x7665726966ULL;

struct Sizes {
  std::vector<int> n_values;
  std::vector<int> m_values;
  int gradient_samples;
  int correlation_instances;
  int correlation_max_n;
  int lipschitz_pairs;
  int lemma_n;
  int lemma_hi;
  long lemma_iters;
};

Sizes sizes_for(VerifySizes s) {
  if (s == VerifySizes::Small) return {{4, 8, 16}, {2, 3, 4}, 60, 100, 8, 200, 16, 5, 300};
  return {{4, 8, 16, 32}, {2, 3, 4}, 200, 100, 16, 1000, 32, 9, 2000};
}

int pick(const std::vector<int>& values, Rng& rng) {
  return values[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(values.size()))];
}

int pick_range(int lo, int hi, Rng& rng) {
  return lo + static_cast<int>(uniform01(rng) * (hi - lo + 1));
}

PhaseMatrix random_phases(int n_len, int m_count, Rng& rng) {
  PhaseMatrix phi(n_len, m_count);
  for (Eigen::Index m = 0; m < phi.cols(); ++m)
    for (Eigen::Index i = 0; i < phi.rows(); ++i) phi(i, m) = kTwoPi * uniform01(rng);
  return phi;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

GradientFn gradient_of(const VerifyOptions& o) {
  if (o.gradient) return o.gradient;
  return [](const PhaseMatrix& phi, int n) { return grad_fn(phi, n); };
}

void note_failure(SuiteResult& r, const std::string& what) {
  ++r.failures;
  if (r.detail.empty()) r.detail = what;
}

// Eq. (1) read literally with 1-based k, any sign of n.
CorrelationMatrix brute_correlation(const SequenceSet& x, int n) {
  const int len = static_cast<int>(x.rows());
  const int m_count = static_cast<int>(x.cols());
  CorrelationMatrix r = CorrelationMatrix::Zero(m_count, m_count);
  for (int i = 0; i < m_count; ++i)
    for (int j = 0; j < m_count; ++j)
      for (int k = 1; k <= len; ++k) {
        const int shifted = k - n;
        if (shifted < 1 || shifted > len) continue;
        r(i, j) += std::conj(x(k - 1, i)) * x(shifted - 1, j);
      }
  return r;
}

}  // namespace

VerifySizes parse_verify_sizes(const std::string& text) {
  if (text == "small") return VerifySizes::Small;
  if (text == "medium") return VerifySizes::Medium;
  throw Error(ErrorKind::Config, "sizes: expected \"small\" or \"medium\"");
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

SuiteResult verify_gradient(const VerifyOptions& options) {
  const Sizes sz = sizes_for(options.sizes);
  const GradientFn gradient = gradient_of(options);
  Rng rng = make_stream(options.seed, kVerifyStream + 1);
  SuiteResult r;
  r.name = "gradient-fd";
  for (int s = 0; s < sz.gradient_samples; ++s) {
    const int n_len = pick(sz.n_values, rng);
    const int m_count = pick(sz.m_values, rng);
    const int n = pick_range(0, n_len - 1, rng);
    const PhaseMatrix phi = random_phases(n_len, m_count, rng);
    const GradientMatrix fd = grad_fd_oracle(phi, n, 1e-6);
    const GradientMatrix g = gradient(phi, n);
    // f_{N-1} is constant, so its gradient is zero; the floor keeps that case meaningful.
    const double err = (g - fd).norm() / std::max(fd.norm(), 1.0);
    ++r.cases;
    r.worst = std::max(r.worst, err);
    if (!(err < 1e-5))
      note_failure(r, "N=" + std::to_string(n_len) + " M=" + std::to_string(m_count) + " n=" + std::to_string(n) +
                          " relative error " + fmt(err));
  }
  return r;
}

SuiteResult verify_correlation(const VerifyOptions& options) {
  const Sizes sz = sizes_for(options.sizes);
  Rng rng = make_stream(options.seed, kVerifyStream + 2);
  SuiteResult r;
  r.name = "correlation-brute";
  for (int s = 0; s < sz.correlation_instances; ++s) {
    const int n_len = pick_range(1, sz.correlation_max_n, rng);
    const int m_count = pick_range(1, 4, rng);
    const SequenceSet x = phases_to_sequences(random_phases(n_len, m_count, rng));
    for (int n = 0; n < n_len; ++n) {
      const double pos = (shift_correlation(x, n) - brute_correlation(x, n)).cwiseAbs().maxCoeff();
      const double neg = (negative_lag_correlation(x, n) - brute_correlation(x, -n)).cwiseAbs().maxCoeff();
      const double err = std::max(pos, neg);
      ++r.cases;
      r.worst = std::max(r.worst, err);
      if (!(err <= 1e-12))
        note_failure(r, "N=" + std::to_string(n_len) + " n=" + std::to_string(n) + " deviation " + fmt(err));
    }
  }
  return r;
}

SuiteResult verify_lipschitz(const VerifyOptions& options) {
  const Sizes sz = sizes_for(options.sizes);
  const GradientFn gradient = gradient_of(options);
  Rng rng = make_stream(options.seed, kVerifyStream + 3);
  SuiteResult r;
  r.name = "lipschitz";
  for (int s = 0; s < sz.lipschitz_pairs; ++s) {
    const int n_len = pick(sz.n_values, rng);
    const int m_count = pick(sz.m_values, rng);
    const PhaseMatrix a = random_phases(n_len, m_count, rng);
    const PhaseMatrix b = random_phases(n_len, m_count, rng);
    const double bound = lipschitz_bound(n_len, m_count);
    const double dist = (a - b).norm();
    for (int n = 0; n < n_len; ++n) {
      const double ratio = (gradient(a, n) - gradient(b, n)).norm() / dist;
      ++r.cases;
      r.worst = std::max(r.worst, ratio / bound);
      if (!(ratio <= bound))
        note_failure(r, "N=" + std::to_string(n_len) + " M=" + std::to_string(m_count) + " n=" +
                            std::to_string(n) + " ratio " + fmt(ratio) + " > " + fmt(bound));
    }
  }
  return r;
}

SuiteResult verify_lemmas(const VerifyOptions& options) {
  const Sizes sz = sizes_for(options.sizes);
  SolverConfig c;
  c.n_len = sz.lemma_n;
  c.m_count = 3;
  c.lags = LagSet::range(0, sz.lemma_hi, c.n_len);
  c.rho_multiplier = 9.0;
  c.epsilon = 1e-30;
  c.max_iter = sz.lemma_iters;
  c.seed = options.seed;
  c.theory_checks = TheoryChecks::Report;
  c.parallel = false;
  const SolveResult res = solve(c);
  SuiteResult r;
  r.name = "lemma-checks";
  r.cases = res.theory.iterations_checked;
  r.failures = res.theory.monotonicity_violations + res.theory.sufficient_decrease_violations +
               res.theory.lower_bound_violations;
  r.worst = res.theory.max_relative_increase;
  if (!res.theory.rho_rule_satisfied) {
    ++r.failures;
    r.detail = "rho rule not satisfied";
  } else if (r.failures > 0) {
    r.detail = "monotonicity " + std::to_string(res.theory.monotonicity_violations) + ", sufficient decrease " +
               std::to_string(res.theory.sufficient_decrease_violations) + ", lower bound " +
               std::to_string(res.theory.lower_bound_violations);
  }
  return r;
}

SuiteResult verify_identities(const VerifyOptions& options) {
  const Sizes sz = sizes_for(options.sizes);
  Rng rng = make_stream(options.seed, kVerifyStream + 5);
  SuiteResult r;
  r.name = "identities";
  auto check = [&](double err, double tol, const std::string& what) {
    ++r.cases;
    r.worst = std::max(r.worst, err);
    if (!(err <= tol)) note_failure(r, what + " deviation " + fmt(err));
  };
  for (int s = 0; s < 20; ++s) {
    const int n_len = pick(sz.n_values, rng);
    const int m_count = pick(sz.m_values, rng);
    const PhaseMatrix phi = random_phases(n_len, m_count, rng);
    const SequenceSet x = phases_to_sequences(phi);
    const LagSet t = LagSet::range(0, n_len - 1, n_len);
    const double total = objective_total(x, t);
    check(std::abs(isl(x, t) + ccl(x, t) - total) / std::max(total, 1.0), 1e-12, "isl + ccl vs objective");
    const PhaseMatrix shifted = (phi.array() + kTwoPi).matrix();
    check(std::abs(objective_total(shifted, t) - total) / std::max(total, 1.0), 1e-9, "2pi periodicity");
    const CorrelationMatrix r0 = shift_correlation(x, 0);
    check((r0.diagonal().array() - static_cast<double>(n_len)).abs().maxCoeff(), 1e-12, "unit modulus diagonal");
    const int n = pick_range(0, n_len - 1, rng);
    check((negative_lag_correlation(x, n) - shift_correlation(x, n).adjoint()).cwiseAbs().maxCoeff(), 1e-12,
          "hermitian mirror");
  }
  return r;
}

VerifyReport run_verify_suites(const VerifyOptions& options) {
  VerifyReport report;
  report.suites.push_back(verify_gradient(options));
  report.suites.push_back(verify_correlation(options));
  report.suites.push_back(verify_lipschitz(options));
  report.suites.push_back(verify_lemmas(options));
  report.suites.push_back(verify_identities(options));
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-20s %8s %8s %12s  %s\n", "suite", "cases", "failed", "worst", "result");
  out << line;
  for (const auto& s : report.suites) {
    std::snprintf(line, sizeof line, "%-20s %8ld %8ld %12s  %s\n", s.name.c_str(), s.cases, s.failures,
                  fmt(s.worst).c_str(), s.passed() ? "pass" : "FAIL");
    out << line;
  }
  out << (report.passed() ? "all suites passed\n" : "verification failed\n");
  return out.str();
}

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  const VerifyReport report = run_verify_suites(options);
  out << format_report(report);
  for (const auto& s : report.suites)
    if (!s.passed()) err << s.name << ": " << s.detail << '\n';
  return report.passed() ? kExitOk : kExitVerifyFailure;
}

}  // namespace unimod
