#include "unimod/config.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace unimod {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& reason) {
  throw Error(ErrorKind::Config, key + ": " + reason);
}

long long get_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<long long>();
}

int get_int(const json& v, const std::string& key) {
  const long long raw = get_integer(v, key);
  if (raw < std::numeric_limits<int>::min() || raw > std::numeric_limits<int>::max()) fail(key, "out of range");
  return static_cast<int>(raw);
}

double get_real(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

Projection parse_projection(const std::string& text) {
  if (text == "wrap") return Projection::Wrap;
  if (text == "clamp") return Projection::Clamp;
  fail("projection", "expected \"wrap\" or \"clamp\"");
}

TheoryChecks parse_theory_checks(const std::string& text) {
  if (text == "off") return TheoryChecks::Off;
  if (text == "report") return TheoryChecks::Report;
  if (text == "strict") return TheoryChecks::Strict;
  fail("theory_checks", "expected \"off\", \"report\" or \"strict\"");
}

}  // namespace

Algorithm parse_algorithm(const std::string& text) {
  if (text == "admm") return Algorithm::Admm;
  if (text == "pdmm") return Algorithm::Pdmm;
  fail("algorithm", "expected \"admm\" or \"pdmm\"");
}

void RunConfig::validate() const {
  if (algorithm == Algorithm::Pdmm && lag_lo != 0) fail("lag_lo", "pdmm requires lag_lo = 0");
  if (n_len <= 0) fail("n_len", "required positive integer");
  if (m_count <= 0) fail("m_count", "required positive integer");
  if (n_len < 2) fail("n_len", "must be at least 2");
  if (m_count < 2) fail("m_count", "must be at least 2 (single-sequence design is unsupported)");
  if (lag_lo < 0) fail("lag_lo", "must be nonnegative");
  if (lag_lo > lag_hi) fail("lag_lo", "must not exceed lag_hi");
  if (lag_hi > n_len - 1) fail("lag_hi", "must not exceed n_len - 1");
  if (!(rho_multiplier > 0.0)) fail("rho_multiplier", "must be positive");
  if (theory_checks == TheoryChecks::Strict && rho_multiplier < 9.0)
    fail("rho_multiplier", "strict theory checks require rho_multiplier >= 9");
  if (!(epsilon > 0.0)) fail("epsilon", "must be positive");
  if (max_iter < 0) fail("max_iter", "must be nonnegative");
  accel.validate();
}

SolverConfig RunConfig::to_solver_config() const {
  validate();
  SolverConfig c;
  c.n_len = n_len;
  c.m_count = m_count;
  c.lags = LagSet::range(lag_lo, lag_hi, n_len);
  c.algorithm = algorithm;
  c.rho_multiplier = rho_multiplier;
  c.epsilon = epsilon;
  c.max_iter = max_iter;
  c.seed = seed;
  c.accel = accel;
  c.projection = projection;
  c.theory_checks = theory_checks;
  c.zero_multiplier_init = zero_multiplier_init;
  c.parallel = parallel;
  return c;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("config: malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) throw Error(ErrorKind::Config, "config: expected a flat JSON object");

  RunConfig cfg;
  bool lag_hi_given = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "n_len") cfg.n_len = get_int(value, key);
    else if (key == "m_count") cfg.m_count = get_int(value, key);
    else if (key == "lag_lo") cfg.lag_lo = get_int(value, key);
    else if (key == "lag_hi") { cfg.lag_hi = get_int(value, key); lag_hi_given = true; }
    else if (key == "algorithm") cfg.algorithm = parse_algorithm(get_string(value, key));
    else if (key == "rho_multiplier") cfg.rho_multiplier = get_real(value, key);
    else if (key == "epsilon") cfg.epsilon = get_real(value, key);
    else if (key == "max_iter") cfg.max_iter = static_cast<long>(get_integer(value, key));
    else if (key == "seed") {
      if (!value.is_number_unsigned()) fail(key, "expected a nonnegative integer");
      cfg.seed = value.get<std::uint64_t>();
    }
    else if (key == "sbcd_enabled") cfg.accel.sbcd_enabled = get_bool(value, key);
    else if (key == "sbcd_probability") cfg.accel.sbcd_probability = get_real(value, key);
    else if (key == "agd_enabled") cfg.accel.agd_enabled = get_bool(value, key);
    else if (key == "agd_momentum") cfg.accel.agd_momentum = get_real(value, key);
    else if (key == "projection") cfg.projection = parse_projection(get_string(value, key));
    else if (key == "theory_checks") cfg.theory_checks = parse_theory_checks(get_string(value, key));
    else if (key == "zero_multiplier_init") cfg.zero_multiplier_init = get_bool(value, key);
    else if (key == "parallel") cfg.parallel = get_bool(value, key);
    else if (key == "output_dir") cfg.output_dir = get_string(value, key);
    else fail(key, "unknown key");
  }
  if (!lag_hi_given && cfg.n_len > 0) cfg.lag_hi = std::min(cfg.lag_hi, cfg.n_len - 1);
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

json config_to_json(const RunConfig& c) {
  json j;
  j["n_len"] = c.n_len;
  j["m_count"] = c.m_count;
  j["lag_lo"] = c.lag_lo;
  j["lag_hi"] = c.lag_hi;
  j["algorithm"] = std::string(to_string(c.algorithm));
  j["rho_multiplier"] = c.rho_multiplier;
  j["epsilon"] = c.epsilon;
  j["max_iter"] = c.max_iter;
  j["seed"] = c.seed;
  j["sbcd_enabled"] = c.accel.sbcd_enabled;
  j["sbcd_probability"] = c.accel.sbcd_probability;
  j["agd_enabled"] = c.accel.agd_enabled;
  j["agd_momentum"] = c.accel.agd_momentum;
  j["projection"] = std::string(to_string(c.projection));
  j["theory_checks"] = std::string(to_string(c.theory_checks));
  j["zero_multiplier_init"] = c.zero_multiplier_init;
  j["parallel"] = c.parallel;
  j["output_dir"] = c.output_dir.generic_string();
  return j;
}

}  // namespace unimod
