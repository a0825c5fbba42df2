#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unimod/io.hpp"
#include "unimod/verify.hpp"

#include <sstream>

using namespace unimod;

TEST_CASE("default sizes pass every suite") {
  VerifyOptions o;
  std::ostringstream out, err;
  CHECK(run_verify(o, out, err) == kExitOk);
  CHECK(err.str().empty());
  CHECK(out.str().find("all suites passed") != std::string::npos);
  for (const char* name : {"gradient-fd", "correlation-brute", "lipschitz", "lemma-checks", "identities"})
    CHECK(out.str().find(name) != std::string::npos);
}

TEST_CASE("a broken gradient is caught") {
  VerifyOptions o;
  o.gradient = [](const PhaseMatrix& phi, int n) {
    GradientMatrix g = grad_fn(phi, n);
    g(0, 0) *= 1.01;
    return g;
  };
  const SuiteResult r = verify_gradient(o);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.detail.empty());

  std::ostringstream out, err;
  CHECK(run_verify(o, out, err) == kExitVerifyFailure);
  CHECK(err.str().rfind("gradient-fd:", 0) == 0);
  CHECK(out.str().find("FAIL") != std::string::npos);
}

TEST_CASE("a sign error in the gradient is caught") {
  VerifyOptions o;
  o.gradient = [](const PhaseMatrix& phi, int n) { return GradientMatrix(-grad_fn(phi, n)); };
  CHECK_FALSE(verify_gradient(o).passed());
}

TEST_CASE("reports repeat exactly") {
  VerifyOptions o;
  o.seed = 12;
  CHECK(format_report(run_verify_suites(o)) == format_report(run_verify_suites(o)));
}

TEST_CASE("medium sizes pass") {
  VerifyOptions o;
  o.sizes = parse_verify_sizes("medium");
  CHECK(run_verify_suites(o).passed());
  CHECK_THROWS_AS(parse_verify_sizes("large"), Error);
}
