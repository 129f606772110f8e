// Command-line front end: simulate, region, verify, validate.
// Exit codes: 0 = all checks pass, 1 = violations found, 2 = config/runtime
// error.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "delaybound/pipeline.hpp"
#include "delaybound/scenario.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string scenario;
  std::string out_dir;
  std::optional<double> step;
  std::optional<double> horizon;
  std::optional<long> seed;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Path to a scenario config file");
  cmd->add_option("--scenario", opts.scenario, "Built-in scenario name");
  cmd->add_option("--out", opts.out_dir, "Output directory override");
  cmd->add_option("--step", opts.step, "Integrator step override");
  cmd->add_option("--horizon", opts.horizon, "End-time override (t_end = t0 + horizon)");
  cmd->add_option("--seed", opts.seed, "Random seed override");
}

// Loads and resolves the config; prints errors/warnings. Returns nullopt on
// validation failure (caller exits with code 2).
std::optional<delaybound::ScenarioConfig> resolve(const CommonOpts& opts) {
  delaybound::ConfigResult parsed;
  if (!opts.scenario.empty() && !opts.config_path.empty()) {
    std::cerr << "error: give --config or --scenario, not both\n";
    return std::nullopt;
  }
  if (!opts.scenario.empty()) {
    parsed.config = delaybound::load_scenario(opts.scenario).config;
  } else if (!opts.config_path.empty()) {
    parsed = delaybound::load_config_file(opts.config_path);
  } else {
    std::cerr << "error: --config <path> or --scenario <name> is required\n";
    return std::nullopt;
  }
  for (const auto& warning : parsed.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (!parsed.ok()) {
    for (const auto& error : parsed.errors) std::cerr << "error: " << error << "\n";
    return std::nullopt;
  }
  delaybound::ScenarioConfig cfg = parsed.config;
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  if (opts.step) cfg.step = *opts.step;
  if (opts.horizon) cfg.t_end = cfg.t0 + *opts.horizon;
  if (opts.seed) cfg.seed = static_cast<std::uint64_t>(*opts.seed);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scalar bounding equations for vector delay systems"};
  app.require_subcommand(1);

  CommonOpts sim_opts, region_opts, verify_opts, validate_opts;
  std::string suite = "comparison";
  bool list = false;

  CLI::App* sim = app.add_subcommand("simulate", "Norm-evolution curves and bound chain");
  add_common(sim, sim_opts);
  CLI::App* region = app.add_subcommand("region", "Scalar radii and boundary sweep");
  add_common(region, region_opts);
  CLI::App* verify = app.add_subcommand("verify", "Property suites");
  add_common(verify, verify_opts);
  verify->add_option("--suite", suite,
                     "Suite: comparison, monotonicity, robust, dominance");
  CLI::App* validate = app.add_subcommand("validate", "Parse and echo a config");
  add_common(validate, validate_opts);
  validate->add_flag("--list", list, "List built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      auto cfg = resolve(sim_opts);
      if (!cfg) return 2;
      const auto artifacts = delaybound::run_simulate(*cfg);
      const auto result = delaybound::write_simulate(*cfg, artifacts);
      std::cout << result.report;
      return result.exit_code;
    }
    if (region->parsed()) {
      auto cfg = resolve(region_opts);
      if (!cfg) return 2;
      const auto artifacts = delaybound::run_region(*cfg);
      const auto result = delaybound::write_region(*cfg, artifacts);
      std::cout << result.report;
      return result.exit_code;
    }
    if (verify->parsed()) {
      auto cfg = resolve(verify_opts);
      if (!cfg) return 2;
      const auto result = delaybound::run_verify(*cfg, suite);
      std::cout << result.report;
      return result.exit_code;
    }
    if (validate->parsed()) {
      if (list) {
        for (const auto& name : delaybound::list_scenarios()) std::cout << name << "\n";
        return 0;
      }
      auto cfg = resolve(validate_opts);
      if (!cfg) return 2;
      std::cout << delaybound::dump_config(*cfg);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
