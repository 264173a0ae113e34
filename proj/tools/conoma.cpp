// Command-line front end: solve, sweep, threshold, scenario.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conoma/cli/commands.hpp"
#include "conoma/cli/config.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string output;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_seed, bool with_output) {
  cmd->add_option("-c,--config", opts.config_path, "key = value config file");
  cmd->add_option("--set", opts.overrides, "override a config key (key=value)");
  if (with_seed) cmd->add_option("--seed", opts.seed, "generator seed for geometry runs");
  if (with_output) cmd->add_option("-o,--output", opts.output, "output CSV path ('-' = stdout)");
}

conoma::cli::Config build_config(const CommonOptions& opts) {
  conoma::cli::Config cfg;
  if (!opts.config_path.empty()) cfg = conoma::cli::Config::load(opts.config_path);
  for (const std::string& kv : opts.overrides) cfg.set_assignment(kv);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace conoma::cli;
  CLI::App app{"Two-cell downlink power allocation with cooperative NOMA"};
  app.require_subcommand(1);

  CommonOptions solve_opts, sweep_opts, threshold_opts, scenario_opts;
  CLI::App* solve = app.add_subcommand("solve", "solve every scheme for one scenario");
  add_common(solve, solve_opts, true, false);
  CLI::App* sweep = app.add_subcommand("sweep", "sweep one axis and write rates as CSV");
  add_common(sweep, sweep_opts, true, true);
  CLI::App* threshold =
      app.add_subcommand("threshold", "tabulate the S4-vs-S3 rho threshold over (alpha, beta)");
  add_common(threshold, threshold_opts, false, true);
  double a0 = 0, a1 = 0, da = 0, b0 = 0, b1 = 0, db = 0;
  auto* o_a0 = threshold->add_option("--alpha-start", a0);
  auto* o_a1 = threshold->add_option("--alpha-stop", a1);
  auto* o_da = threshold->add_option("--alpha-step", da);
  auto* o_b0 = threshold->add_option("--beta-start", b0);
  auto* o_b1 = threshold->add_option("--beta-stop", b1);
  auto* o_db = threshold->add_option("--beta-step", db);
  bool crossover = false;
  threshold->add_flag("--crossover", crossover, "add a bisection crossover column");
  CLI::App* scenario =
      app.add_subcommand("scenario", "print the scenario derived from the geometry");
  add_common(scenario, scenario_opts, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (*solve) {
      return cmd_solve(build_config(solve_opts), solve_opts.seed, std::cout, std::cerr);
    }
    if (*sweep) {
      Config cfg = build_config(sweep_opts);
      if (!sweep_opts.output.empty()) cfg.set("sweep.output", sweep_opts.output);
      return cmd_sweep(cfg, sweep_opts.seed, std::cout, std::cerr);
    }
    if (*threshold) {
      Config cfg = build_config(threshold_opts);
      auto put = [&](CLI::Option* opt, const char* key, double v) {
        if (opt->count() > 0) cfg.set(key, format_number(v));
      };
      put(o_a0, "threshold.alpha_start", a0);
      put(o_a1, "threshold.alpha_stop", a1);
      put(o_da, "threshold.alpha_step", da);
      put(o_b0, "threshold.beta_start", b0);
      put(o_b1, "threshold.beta_stop", b1);
      put(o_db, "threshold.beta_step", db);
      if (crossover) cfg.set("threshold.crossover", "true");
      if (!threshold_opts.output.empty()) cfg.set("threshold.output", threshold_opts.output);
      return cmd_threshold(cfg, std::cout, std::cerr);
    }
    if (*scenario) {
      return cmd_scenario(build_config(scenario_opts), scenario_opts.seed, std::cout,
                          std::cerr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIoError;
  }
  return kExitConfigError;
}
