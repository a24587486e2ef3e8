// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "pxlap/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "pxlap: variable-exponent nonlocal norms, energy minimization, and "
      "level-set truncation traces on box grids"};
  app.require_subcommand(1);

  std::string config_path, out_dir, solution_csv;
  std::uint64_t seed = 0;
  int threads = 0;
  bool verbose = false;

  auto* opt_config =
      app.add_option("--config", config_path,
                     "configuration file (sectioned key = value text)")
          ->check(CLI::ExistingFile);
  auto* opt_out = app.add_option(
      "--out", out_dir,
      "output directory (overrides PXLAP_OUT_DIR and the config)");
  auto* opt_seed = app.add_option("--seed", seed, "random seed override");
  auto* opt_threads = app.add_option(
      "--threads", threads,
      "declared worker threads (recorded in the run setup; evaluation is "
      "deterministic and single-threaded)");
  app.add_flag("--verbose", verbose, "more progress output");

  CLI::App* c_norm =
      app.add_subcommand("norm",
                         "Lebesgue/Gagliardo/combined norm reports for the "
                         "configured function");
  c_norm->fallthrough();
  CLI::App* c_solve = app.add_subcommand(
      "solve", "energy minimization of the configured Dirichlet problem");
  c_solve->fallthrough();
  CLI::App* c_degiorgi = app.add_subcommand(
      "degiorgi", "level-set truncation trace of a stored solution");
  c_degiorgi->fallthrough();
  c_degiorgi
      ->add_option("--solution", solution_csv,
                   "solution CSV produced by the solve command")
      ->required();
  CLI::App* c_suite = app.add_subcommand(
      "suite",
      "full pipeline: norm checks, solve + multistart, subspace negativity, "
      "level traces, sup-bound fit, exponent modulus, imbedding ratio");
  c_suite->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? pxlap::exit_ok : pxlap::exit_config;
  }

  try {
    pxlap::ExperimentConfig cfg;
    if (opt_config->count() > 0) {
      cfg = pxlap::ExperimentConfig::load(config_path);
    } else {
      std::istringstream empty;
      cfg = pxlap::ExperimentConfig::from_stream(empty, "<defaults>");
    }
    if (const char* env = std::getenv("PXLAP_OUT_DIR")) cfg.out_dir = env;
    if (opt_out->count() > 0) cfg.out_dir = out_dir;
    if (opt_seed->count() > 0) cfg.seed = seed;
    if (opt_threads->count() > 0) {
      if (threads < 1) {
        std::cerr << "error: --threads must be >= 1\n";
        return pxlap::exit_config;
      }
      cfg.threads = threads;
    }
    if (verbose) cfg.verbose = true;

    if (*c_norm) return pxlap::cmd_norm(cfg);
    if (*c_solve) return pxlap::cmd_solve(cfg);
    if (*c_degiorgi) return pxlap::cmd_degiorgi(cfg, solution_csv);
    if (*c_suite) return pxlap::cmd_suite(cfg);
    std::cerr << "error: no command selected\n";
    return pxlap::exit_config;
  } catch (const pxlap::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pxlap::exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pxlap::exit_assertion;
  }
}
