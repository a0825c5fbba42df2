#include "unimod/config.hpp"
#include "unimod/io.hpp"
#include "unimod/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace unimod;

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> algorithm;
  std::optional<std::string> out;
};

RunConfig load_with_overrides(const std::string& path, const Overrides& o) {
  RunConfig cfg = load_config(path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.algorithm) cfg.algorithm = parse_algorithm(*o.algorithm);
  if (o.out) cfg.output_dir = *o.out;
  cfg.validate();
  return cfg;
}

int exit_for(const Error& e) {
  return e.kind() == ErrorKind::Io ? kExitIo : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unimodular sequence set design by consensus ADMM / PDMM"};
  app.require_subcommand(1);

  std::string design_config;
  Overrides design_over;
  auto* design = app.add_subcommand("design", "Run one design and write its outputs");
  design->add_option("--config", design_config, "JSON config file")->required();
  design->add_option("--seed", design_over.seed, "Master seed");
  design->add_option("--algorithm", design_over.algorithm, "admm or pdmm");
  design->add_option("--out", design_over.out, "Output directory");

  std::string sizes = "small";
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the oracle suites");
  verify->add_option("--sizes", sizes, "small or medium");
  verify->add_option("--seed", verify_seed, "Seed for the sampled cases");

  std::string sweep_config;
  std::string seed_list;
  Overrides sweep_over;
  auto* sweep = app.add_subcommand("sweep", "Repeat a design over many seeds");
  sweep->add_option("--config", sweep_config, "JSON config file")->required();
  sweep->add_option("--seeds", seed_list, "Seed range a..b or comma list")->required();
  sweep->add_option("--algorithm", sweep_over.algorithm, "admm or pdmm");
  sweep->add_option("--out", sweep_over.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*design) return run_design(load_with_overrides(design_config, design_over));
    if (*verify) {
      VerifyOptions options;
      options.sizes = parse_verify_sizes(sizes);
      options.seed = verify_seed;
      return run_verify(options, std::cout, std::cerr);
    }
    if (*sweep) {
      const RunConfig cfg = load_with_overrides(sweep_config, sweep_over);
      return run_sweep(cfg, parse_seed_list(seed_list));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  }
  return kExitValidation;
}
