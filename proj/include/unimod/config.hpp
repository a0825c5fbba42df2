#pragma once

#include "unimod/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace unimod {

/// Flat run description as read from a JSON config file and CLI overrides.
struct RunConfig {
  int n_len = 0;
  int m_count = 0;
  int lag_lo = 0;
  int lag_hi = 39;  ///< clipped to n_len - 1 when not given explicitly
  Algorithm algorithm = Algorithm::Admm;
  double rho_multiplier = 9.0;
  double epsilon = 1e-4;
  long max_iter = 50000;
  std::uint64_t seed = 1;
  AccelConfig accel;
  Projection projection = Projection::Wrap;
  TheoryChecks theory_checks = TheoryChecks::Report;
  bool zero_multiplier_init = false;
  bool parallel = true;
  std::filesystem::path output_dir = "out";

  /// Throws Config naming the offending key.
  void validate() const;
  SolverConfig to_solver_config() const;
};

/// Parses a flat JSON object. Unknown keys, type mismatches and invariant violations
/// raise Config errors of the form "<key>: <reason>".
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::filesystem::path& path);

/// Stable-ordered JSON echo of every field.
nlohmann::json config_to_json(const RunConfig& config);

Algorithm parse_algorithm(const std::string& text);

}  // namespace unimod
