#include "unimod/io.hpp"

#include "unimod/diagnostics.hpp"
#include "unimod/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace unimod {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double parse_number(std::string_view field, const fs::path& path) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw Error(ErrorKind::Io, "malformed number '" + std::string(field) + "' in " + path.string());
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

struct DesignOutcome {
  int exit_code = kExitOk;
  StopReason reason = StopReason::IterationBudget;
  std::optional<LevelSummary> levels;
};

DesignOutcome design_and_write(const RunConfig& config) {
  DesignOutcome outcome;
  SolverConfig solver_config;
  try {
    solver_config = config.to_solver_config();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    outcome.exit_code = kExitValidation;
    return outcome;
  }

  const SolveResult result = solve(solver_config);
  outcome.reason = result.reason;
  outcome.levels = summarize_levels(phases_to_sequences(result.phi), solver_config.lags);
  outcome.exit_code = write_design_outputs(config, result);
  return outcome;
}

}  // namespace

int exit_code_for(StopReason reason) {
  return reason == StopReason::Diverged || reason == StopReason::TheoryViolation ? kExitDivergence : kExitOk;
}

int write_design_outputs(const RunConfig& config, const SolveResult& result) {
  const SequenceSet x = phases_to_sequences(result.phi);
  const LevelSummary levels = summarize_levels(x, LagSet::range(config.lag_lo, config.lag_hi, config.n_len));
  try {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + config.output_dir.string() + ": " + ec.message());
    write_phases_csv(config.output_dir / "phases.csv", result.phi);
    write_sequences_csv(config.output_dir / "sequences.csv", x);
    write_trace_csv(config.output_dir / "trace.csv", result.trace);
    write_timing_csv(config.output_dir / "timing.csv", result.trace);
    write_correlation_profile_csv(config.output_dir / "correlation_profile.csv", levels);
    const fs::path summary_path = config.output_dir / "summary.json";
    std::ofstream out = open_out(summary_path);
    out << make_summary(config, result).dump(2) << '\n';
    finish(out, summary_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  const int code = exit_code_for(result.reason);
  if (code != kExitOk) std::cerr << "error: solver stopped with reason " << to_string(result.reason) << '\n';
  return code;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

LevelSummary summarize_levels(const SequenceSet& x, const LagSet& t) {
  LevelSummary s;
  s.lags = t.lags();
  double sum = 0.0;
  s.minimum_db = std::numeric_limits<double>::infinity();
  for (int n : t) {
    const double level = correlation_level_db(x, n);
    s.level_db.push_back(level);
    sum += level;
    s.minimum_db = std::min(s.minimum_db, level);
  }
  s.average_db = sum / static_cast<double>(t.size());
  return s;
}

void write_phases_csv(const fs::path& path, const PhaseMatrix& phi) {
  std::ofstream out = open_out(path);
  for (Eigen::Index m = 0; m < phi.cols(); ++m) out << (m ? "," : "") << "seq_" << (m + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < phi.rows(); ++i) {
    for (Eigen::Index m = 0; m < phi.cols(); ++m) out << (m ? "," : "") << format_number(phi(i, m));
    out << '\n';
  }
  finish(out, path);
}

PhaseMatrix read_phases_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Io, "empty phases file " + path.string());
  const std::size_t cols = split_csv(line).size();
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != cols) throw Error(ErrorKind::Io, "ragged row in " + path.string());
    for (auto f : fields) values.push_back(parse_number(f, path));
    ++rows;
  }
  PhaseMatrix phi(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t m = 0; m < cols; ++m) phi(i, m) = values[i * cols + m];
  return phi;
}

void write_sequences_csv(const fs::path& path, const SequenceSet& x) {
  std::ofstream out = open_out(path);
  for (Eigen::Index m = 0; m < x.cols(); ++m)
    out << (m ? "," : "") << "re_" << (m + 1) << ",im_" << (m + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index m = 0; m < x.cols(); ++m)
      out << (m ? "," : "") << format_number(x(i, m).real()) << ',' << format_number(x(i, m).imag());
    out << '\n';
  }
  finish(out, path);
}

void write_trace_csv(const fs::path& path, const std::vector<ConvergenceRecord>& trace) {
  std::ofstream out = open_out(path);
  out << "k,objective,aug_lagrangian,combined_residual,consensus_gap\n";
  for (const auto& r : trace)
    out << r.k << ',' << format_number(r.objective) << ',' << format_number(r.aug_lagrangian) << ','
        << format_number(r.combined_residual) << ',' << format_number(r.consensus_gap) << '\n';
  finish(out, path);
}

void write_timing_csv(const fs::path& path, const std::vector<ConvergenceRecord>& trace) {
  std::ofstream out = open_out(path);
  out << "k,wall_ms\n";
  for (const auto& r : trace) out << r.k << ',' << format_number(r.wall_ms) << '\n';
  finish(out, path);
}

void write_correlation_profile_csv(const fs::path& path, const LevelSummary& levels) {
  std::ofstream out = open_out(path);
  out << "n,level_db\n";
  for (std::size_t i = levels.lags.size(); i-- > 0;) {
    if (levels.lags[i] == 0) continue;
    out << -levels.lags[i] << ',' << format_number(levels.level_db[i]) << '\n';
  }
  for (std::size_t i = 0; i < levels.lags.size(); ++i)
    out << levels.lags[i] << ',' << format_number(levels.level_db[i]) << '\n';
  finish(out, path);
}

json make_summary(const RunConfig& config, const SolveResult& result) {
  const SolverConfig sc = config.to_solver_config();
  const SequenceSet x = phases_to_sequences(result.phi);
  const LevelSummary levels = summarize_levels(x, sc.lags);

  json final_metrics;
  final_metrics["objective"] = objective_total(x, sc.lags);
  final_metrics["isl"] = isl(x, sc.lags);
  final_metrics["ccl"] = ccl(x, sc.lags);
  final_metrics["average_level_db"] = json_number(levels.average_db);
  final_metrics["minimum_level_db"] = json_number(levels.minimum_db);
  json per_lag = json::array();
  for (std::size_t i = 0; i < levels.lags.size(); ++i)
    per_lag.push_back({{"n", levels.lags[i]}, {"level_db", json_number(levels.level_db[i])}});
  final_metrics["levels"] = per_lag;
  final_metrics["stationarity_residual"] =
      stationarity_residual(result.phi, sc.lags, default_stationarity_step(sc.lags, sc.n_len, sc.m_count),
                            sc.projection);
  final_metrics["consensus_gap"] = consensus_gap(result.final_state, sc.projection);
  final_metrics["multiplier_gradient_mismatch"] = multiplier_gradient_mismatch(result.final_state);
  if (!result.trace.empty()) {
    final_metrics["combined_residual"] = json_number(result.trace.back().combined_residual);
    final_metrics["aug_lagrangian"] = json_number(result.trace.back().aug_lagrangian);
  }

  json theory;
  theory["rho_rule_satisfied"] = result.theory.rho_rule_satisfied;
  theory["iterations_checked"] = result.theory.iterations_checked;
  theory["monotonicity_violations"] = result.theory.monotonicity_violations;
  theory["sufficient_decrease_violations"] = result.theory.sufficient_decrease_violations;
  theory["lower_bound_violations"] = result.theory.lower_bound_violations;
  theory["max_relative_increase"] = json_number(result.theory.max_relative_increase);
  theory["min_aug_lagrangian"] = json_number(result.theory.min_aug_lagrangian);
  theory["agd_restarts"] = result.theory.agd_restarts;

  json doc;
  doc["config"] = config_to_json(config);
  doc["final"] = final_metrics;
  doc["initial_objective"] = result.initial_objective;
  doc["iterations"] = static_cast<long>(result.trace.size());
  doc["stop_reason"] = std::string(to_string(result.reason));
  doc["theory_checks"] = theory;
  return doc;
}

int run_design(const RunConfig& config) { return design_and_write(config).exit_code; }

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  auto parse_one = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw Error(ErrorKind::Config, "seeds: malformed seed '" + std::string(s) + "'");
    return v;
  };
  std::vector<std::uint64_t> seeds;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = parse_one(std::string_view(text).substr(0, dots));
    const std::uint64_t hi = parse_one(std::string_view(text).substr(dots + 2));
    if (lo > hi) throw Error(ErrorKind::Config, "seeds: empty range");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  } else {
    for (auto field : split_csv(text)) seeds.push_back(parse_one(field));
  }
  if (seeds.empty()) throw Error(ErrorKind::Config, "seeds: empty seed list");
  return seeds;
}

int run_sweep(const RunConfig& config, const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) {
    std::cerr << "error: seeds: empty seed list\n";
    return kExitValidation;
  }
  try {
    config.validate();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  struct Row {
    std::uint64_t seed;
    DesignOutcome outcome;
  };
  std::vector<Row> rows;
  int first_failure = kExitOk;
  for (std::uint64_t seed : seeds) {
    RunConfig run = config;
    run.seed = seed;
    run.output_dir = config.output_dir / ("seed_" + std::to_string(seed));
    DesignOutcome outcome = design_and_write(run);
    if (outcome.exit_code != kExitOk && first_failure == kExitOk) first_failure = outcome.exit_code;
    std::cout << "seed " << seed << ": " << to_string(outcome.reason);
    if (outcome.levels) std::cout << ", average " << format_number(outcome.levels->average_db) << " dB";
    std::cout << '\n';
    rows.push_back({seed, std::move(outcome)});
  }

  double sum = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  for (const auto& r : rows) {
    if (r.outcome.exit_code != kExitOk || !r.outcome.levels) continue;
    sum += r.outcome.levels->average_db;
    best = std::min(best, r.outcome.levels->average_db);
    ++used;
  }

  const fs::path path = config.output_dir / "sweep_summary.csv";
  try {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + config.output_dir.string() + ": " + ec.message());
    std::ofstream out = open_out(path);
    out << "seed,exit_code,stop_reason,average_level_db,minimum_level_db\n";
    for (const auto& r : rows) {
      out << r.seed << ',' << r.outcome.exit_code << ',' << to_string(r.outcome.reason) << ',';
      if (r.outcome.levels)
        out << format_number(r.outcome.levels->average_db) << ',' << format_number(r.outcome.levels->minimum_db);
      else
        out << ',';
      out << '\n';
    }
    if (used > 0)
      out << "aggregate," << used << ",," << format_number(sum / static_cast<double>(used)) << ','
          << format_number(best) << '\n';
    else
      out << "aggregate,0,,,\n";
    finish(out, path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  if (used > 0)
    std::cout << "aggregate over " << used << " runs: average " << format_number(sum / static_cast<double>(used))
              << " dB, minimum " << format_number(best) << " dB\n";
  return first_failure;
}

}  // namespace unimod
