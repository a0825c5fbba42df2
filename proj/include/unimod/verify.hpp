#pragma once

#include "unimod/gradient.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace unimod {

enum class VerifySizes { Small, Medium };

VerifySizes parse_verify_sizes(const std::string& text);

/// Gradient under test; defaults to grad_fn. Swappable so a broken gradient can be fed in.
using GradientFn = std::function<GradientMatrix(const PhaseMatrix&, int)>;

struct VerifyOptions {
  VerifySizes sizes = VerifySizes::Small;
  std::uint64_t seed = 1;
  GradientFn gradient;
};

struct SuiteResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  double worst = 0.0;  ///< largest error/ratio seen, suite-specific meaning
  std::string detail;  ///< first failing case, empty when all pass
  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

SuiteResult verify_gradient(const VerifyOptions& options);
SuiteResult verify_correlation(const VerifyOptions& options);
SuiteResult verify_lipschitz(const VerifyOptions& options);
SuiteResult verify_lemmas(const VerifyOptions& options);
SuiteResult verify_identities(const VerifyOptions& options);

VerifyReport run_verify_suites(const VerifyOptions& options);

/// Fixed-width pass/fail table. No timings, so equal inputs give equal text.
std::string format_report(const VerifyReport& report);

/// Prints the table to `out`, failure details to `err`. Returns kExitOk or kExitVerifyFailure.
int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

}  // namespace unimod
