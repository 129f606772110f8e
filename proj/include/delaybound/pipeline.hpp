#pragma once

// End-to-end runs behind the CLI commands: simulate (norm-evolution CSV and
// bound-chain report), region (scalar radii, boundary sweep, containment),
// and the verification suites. Also the CSV writers, kept here so tests can
// exercise the exact artifact bytes.

#include <string>
#include <vector>

#include "delaybound/config.hpp"
#include "delaybound/region.hpp"
#include "delaybound/verification.hpp"

namespace delaybound {

/// Exit-code contract shared with the CLI: 0 = all checks pass, 1 =
/// violations found, 2 = configuration/runtime error.
struct RunResult {
  int exit_code = 0;
  std::string report;                // human-readable key-value report
  std::vector<std::string> files;    // artifact paths written
};

/// Formats one CSV cell: "%.12g" for finite values, the literal token
/// "blowup" otherwise.
std::string csv_cell(double value);

struct SimulateArtifacts {
  std::vector<double> grid;
  std::vector<double> norm_x;  // NaN past a blow-up
  std::vector<double> y;
  std::vector<double> yhat;
  std::vector<double> u;       // empty when no validity radius is configured
  BoundReport chain;
  ZetaBarAudit audit;          // meaningful only when u is present
  bool have_u = false;
  bool c_clamped = false;
  std::size_t kink_count = 0;
};

/// Solves the vector system, its scalar counterpart, the constant-coefficient
/// counterpart, and (when a validity radius is set) the linear counterpart,
/// all with matched histories; checks the norm ordering chain on the output
/// grid.
SimulateArtifacts run_simulate(const ScenarioConfig& cfg);

struct RegionArtifacts {
  ScalarRadiusResult nonautonomous;
  ScalarRadiusResult autonomous;
  std::vector<BoundaryPoint> boundary;
  ContainmentResult containment;
  RegionMode mode = RegionMode::Stability;
  bool ordering_ok = false;  // r_autonomous <= r_nonautonomous <= min boundary
};

RegionArtifacts run_region(const ScenarioConfig& cfg);

/// suite in {comparison, monotonicity, robust, dominance}; throws
/// std::invalid_argument otherwise.
RunResult run_verify(const ScenarioConfig& cfg, const std::string& suite);

/// Writes the artifacts and report files into cfg.output_dir (created if
/// needed) and returns the exit code per the contract above.
RunResult write_simulate(const ScenarioConfig& cfg, const SimulateArtifacts& artifacts);
RunResult write_region(const ScenarioConfig& cfg, const RegionArtifacts& artifacts);

/// The trajectory CSV bytes (header t,norm_x,y,yhat[,u]).
std::string trajectory_csv(const SimulateArtifacts& artifacts);

/// One polar curve as CSV bytes (header theta,r,ln_r).
std::string polar_csv(const std::vector<BoundaryPoint>& points);

/// A constant radius expanded to the same polar format on the sweep grid.
std::vector<BoundaryPoint> constant_radius_curve(double radius, double angle_step);

}  // namespace delaybound
