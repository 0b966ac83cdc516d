#include <iostream>

#include "CLI11.hpp"

#include "flagtype/commands.hpp"
#include "flagtype/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Empirical flag types of semigroups in SL(n, R)"};
  app.set_version_flag("--version", flagtype::kToolVersion);
  app.require_subcommand(1);

  std::string matrix_path;
  auto* decompose = app.add_subcommand("decompose", "Iwasawa factors g = k exp(H) n of a matrix");
  decompose->add_option("matrix", matrix_path, "File with one matrix row per line")->required();

  flagtype::EstimateOptions est;
  std::uint64_t seed = 0;
  std::string out_dir;
  int samples = 0;
  auto* estimate = app.add_subcommand("estimate", "Estimate the flag type of a configured semigroup");
  estimate->add_option("config,--config", est.config_path, "Run configuration file")->required();
  auto* seed_opt = estimate->add_option("--seed", seed, "Override the configured seed");
  auto* dir_opt = estimate->add_option("--out-dir", out_dir, "Directory for the JSON and CSV reports");
  auto* samples_opt = estimate->add_option("--samples", samples, "Override samples_per_length");
  estimate->add_flag("--quiet", est.quiet, "Print nothing on success");

  flagtype::Sl2ExampleOptions ex;
  std::string ex_dir;
  auto* example = app.add_subcommand("sl2-example", "Reproduce the SL(2, R) cone example");
  example->add_option("--t", ex.t, "Values of t for the boundary table");
  example->add_option("--samples", ex.samples, "Members of S_W to sample");
  example->add_option("--seed", ex.seed, "Sampling seed");
  auto* ex_dir_opt = example->add_option("--out-dir", ex_dir, "Write sl2_boundary.csv here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : flagtype::kExitParse;
  }

  if (*decompose) return flagtype::cmd_decompose(matrix_path, std::cout, std::cerr);
  if (*estimate) {
    if (*seed_opt) est.seed = seed;
    if (*dir_opt) est.out_dir = out_dir;
    if (*samples_opt) est.samples = samples;
    return flagtype::cmd_estimate(est, std::cout, std::cerr);
  }
  if (*ex_dir_opt) ex.out_dir = ex_dir;
  return flagtype::cmd_sl2_example(ex, std::cout, std::cerr);
}
