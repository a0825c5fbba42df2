#pragma once

#include "unimod/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace unimod {

/// Process exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitDivergence = 2,
  kExitIo = 3,
  kExitVerifyFailure = 4,
};

/// Shortest round-trip decimal form, '.' separator, "-inf"/"inf"/"nan" for non-finite values.
std::string format_number(double v);

/// Per-lag levels of a design over the configured window.
struct LevelSummary {
  std::vector<int> lags;
  std::vector<double> level_db;  ///< one per lag, may be -infinity
  double average_db = 0.0;       ///< mean over lags (−∞ if any lag is exactly zero)
  double minimum_db = 0.0;       ///< min over lags
};

LevelSummary summarize_levels(const SequenceSet& x, const LagSet& t);

void write_phases_csv(const std::filesystem::path& path, const PhaseMatrix& phi);
PhaseMatrix read_phases_csv(const std::filesystem::path& path);
void write_sequences_csv(const std::filesystem::path& path, const SequenceSet& x);
void write_trace_csv(const std::filesystem::path& path, const std::vector<ConvergenceRecord>& trace);
void write_timing_csv(const std::filesystem::path& path, const std::vector<ConvergenceRecord>& trace);
/// Rows n = -lag_hi..-lag_lo, lag_lo..lag_hi; each negative lag repeats its mirror's value.
void write_correlation_profile_csv(const std::filesystem::path& path, const LevelSummary& levels);

/// Builds the summary document (final metrics, stop reason, theory counters, config echo).
nlohmann::json make_summary(const RunConfig& config, const SolveResult& result);

/// kExitDivergence for diverged or strict-violation stops, kExitOk otherwise.
int exit_code_for(StopReason reason);

/// Writes every output file for a finished run. Returns kExitIo on write failure, else exit_code_for.
int write_design_outputs(const RunConfig& config, const SolveResult& result);

/// Runs one design and writes every output file. Returns an ExitCode.
int run_design(const RunConfig& config);

/// Parses "a..b" or a comma list into seeds.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// One design per seed under output_dir/seed_<s>/, then sweep_summary.csv. Returns an ExitCode.
int run_sweep(const RunConfig& config, const std::vector<std::uint64_t>& seeds);

}  // namespace unimod
