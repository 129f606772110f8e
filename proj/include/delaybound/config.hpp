#pragma once

// Scenario configuration: structured key-value text with [section] headers,
// parsed into a fully resolved ScenarioConfig. Validation collects every
// error at once instead of stopping at the first.

#include <optional>
#include <string>
#include <vector>

#include "delaybound/auxiliary.hpp"
#include "delaybound/dde.hpp"
#include "delaybound/expr.hpp"
#include "delaybound/majorant.hpp"
#include "delaybound/region.hpp"
#include "delaybound/system.hpp"

namespace delaybound {

struct ScenarioConfig {
  std::string name = "scenario";

  int n = 0;
  double t0 = 0.0;
  double t_end = 0.0;
  double step = 0.0;
  double output_stride = 0.1;

  TimeVaryingMatrix A;
  VectorField field;
  DelaySpec delays;

  double F0 = 0.0;
  std::vector<TimeExpr> forcing_envelope;

  // Constant history vector or per-component expressions.
  std::optional<Eigen::VectorXd> history_const;
  std::vector<TimeExpr> history_exprs;

  std::optional<double> zeta_bar;
  double p_margin = 0.0;

  ClassifierParams classifier;
  double scalar_horizon = 200.0;  // probe horizon for scalar radius searches

  double angle_step = 0.0;  // default pi/100, applied during validation
  double sweep_cap = 50.0;
  double sweep_tol_rel = 0.01;
  double sweep_initial_radius = 0.1;

  std::uint64_t seed = 1;
  int suite_count = 100;

  std::string output_dir = "out";

  DdeSystem system() const;
  HistoryFunction history() const;
};

struct ConfigResult {
  ScenarioConfig config;
  std::vector<std::string> errors;    // itemized, with field paths
  std::vector<std::string> warnings;  // e.g. forcing envelope sup-norm != 1
  bool ok() const { return errors.empty(); }
};

/// Parses and validates the config text; applies defaults. Returns all parse
/// and semantic errors at once.
ConfigResult parse_config(const std::string& text);

ConfigResult load_config_file(const std::string& path);

/// Re-emits a resolved config in the same format (the config echo).
std::string dump_config(const ScenarioConfig& config);

}  // namespace delaybound
