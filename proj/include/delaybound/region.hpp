#pragma once

// Trajectory classification and region-radius estimation: monotone bisection
// for scalar auxiliaries, polar boundary sweep for the vector system, and
// ball containment checks.

#include <optional>
#include <string>
#include <vector>

#include "delaybound/auxiliary.hpp"
#include "delaybound/dde.hpp"
#include "delaybound/system.hpp"

namespace delaybound {

enum class Verdict { DecaysToZero, Bounded, Divergent };

std::string to_string(Verdict v);

struct ClassifierParams {
  double horizon = 20.0;       // seconds simulated per probe
  double divergence_factor = 1e3;  // K: divergent when max norm > K * max(||hist||, 1)
  double decay_threshold = 1e-6;
  double tail_fraction = 0.1;  // window at the end of the horizon checked for decay
};

/// Divergent on reported blow-up or a norm excursion past K * max(||hist||, 1);
/// DecaysToZero when the tail-window max drops below the decay threshold;
/// Bounded otherwise.
Verdict classify(const Trajectory& traj, const ClassifierParams& params);

enum class RegionMode { Stability, Boundedness };

struct ScalarRadiusResult {
  double radius = 0.0;
  bool capped = false;        // no transition found below the search cap
  bool undetermined = false;  // no good verdict anywhere in (0, cap]
  Verdict verdict_below = Verdict::Bounded;
  Verdict verdict_above = Verdict::Bounded;
};

/// Bisects the constant-history amplitude q for the verdict transition
/// (DecaysToZero vs. not for stability; non-Divergent vs. Divergent for
/// boundedness) and returns the lower bracket. Stability mode requires F0 = 0.
ScalarRadiusResult scalar_radius(const ScalarAuxiliary& aux, RegionMode mode,
                                 const ClassifierParams& params, double cap,
                                 double tol_rel, double step);

struct BoundaryPoint {
  double angle = 0.0;
  double radius = 0.0;
  bool capped = false;
};

struct SweepParams {
  double t0 = 0.0;
  double angle_step;
  double cap = 50.0;
  double tol_rel = 0.01;
  double initial_radius = 0.1;
  double escalation = 1.5;
  int plane_axis_a = 0;  // sweep plane for n > 2; remaining components zero
  int plane_axis_b = 1;
};

/// Per angle: geometric radius escalation to bracket the first Divergent
/// verdict, then bisection. Radii at angles with no divergence below the cap
/// are reported as the cap and flagged.
std::vector<BoundaryPoint> vector_boundary_sweep(const DdeSystem& sys,
                                                 const ClassifierParams& params,
                                                 const SweepParams& sweep, double step);

struct ContainmentResult {
  bool contained = false;
  double margin = 0.0;  // min boundary radius - r
};

ContainmentResult containment_check(double r, const std::vector<BoundaryPoint>& boundary);

}  // namespace delaybound
