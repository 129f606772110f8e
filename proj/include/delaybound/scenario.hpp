#pragma once

// Built-in reference scenarios: the second-order oscillator family from the
// simulation study (time-varying drift, delayed coupling, cubic delayed
// nonlinearity) and small closed-form cases used as integrator and
// fundamental-path oracles.

#include <string>
#include <vector>

#include "delaybound/config.hpp"

namespace delaybound {

/// Closed-form spot expectation attached to a reference scenario.
struct ExpectedSpot {
  std::string quantity;  // e.g. "y", "p", "c"
  double t = 0.0;
  double value = 0.0;
  double tol = 0.0;
  std::string basis;  // how the value was obtained (closed form, oracle, ...)
};

struct ReferenceScenario {
  std::string name;
  std::string summary;
  std::string config_text;  // feeds through parse_config
  ScenarioConfig config;
  std::vector<ExpectedSpot> spots;
};

std::vector<std::string> list_scenarios();

/// Throws std::invalid_argument on unknown names. The returned config has
/// passed validation.
ReferenceScenario load_scenario(const std::string& name);

}  // namespace delaybound
