#pragma once

// Certifies the bound chains and comparison properties on concrete runs:
// ordered norm-path chains, randomized comparison and monotonicity suites,
// the robust-stability probe, and the linearization validity audit.

#include <cstdint>
#include <string>
#include <vector>

#include "delaybound/auxiliary.hpp"
#include "delaybound/dde.hpp"
#include "delaybound/majorant.hpp"
#include "delaybound/region.hpp"

namespace delaybound {

struct ChainMember {
  std::string label;
  std::vector<double> values;  // sampled on the shared grid
};

struct PairViolation {
  std::string lower_label;
  std::string upper_label;
  double worst = 0.0;   // max signed violation; positive means violated
  double worst_time = 0.0;
};

struct BoundReport {
  std::vector<double> grid;
  std::vector<PairViolation> pairs;
  double tol_abs = 0.0;
  double tol_rel = 0.0;
  bool pass = true;
  bool inconclusive = false;  // set by callers when a validity hypothesis failed
};

/// Checks member_k(t) <= member_{k+1}(t) + tol_abs + tol_rel * member_{k+1}(t)
/// at every grid time; reports the worst signed violation per adjacent pair.
BoundReport bound_chain(const std::vector<ChainMember>& members,
                        const std::vector<double>& grid, double tol_abs, double tol_rel);

/// Samples a trajectory's Euclidean norm on a grid for use as a chain member.
ChainMember sample_norm_member(const std::string& label, const Trajectory& traj,
                               const std::vector<double>& grid);

struct SuiteReport {
  int instances = 0;
  int violations = 0;
  double worst = 0.0;       // most positive violation seen
  double worst_time = 0.0;
  int worst_instance = -1;
  bool pass() const { return violations == 0; }
};

struct ComparisonSuiteParams {
  double horizon = 10.0;
  double step = 0.05;
  double tol_abs = 1e-9;
  double tol_rel = 1e-6;
};

/// Seeded random scalar DDE pairs satisfying the comparison hypotheses by
/// construction (the larger right-hand side differs by a nonnegative monotone
/// term, the larger history by a nonnegative offset); asserts solution
/// ordering at all common knots.
SuiteReport comparison_suite(int pair_count, std::uint64_t seed,
                             const ComparisonSuiteParams& params = {});

/// For each pair q1 >= q2 of constant histories, asserts
/// y(t, q1) >= y(t, q2) - tol at all knots.
SuiteReport monotonicity_suite(const ScalarAuxiliary& aux,
                               const std::vector<std::pair<double, double>>& q_pairs,
                               double horizon, double step, double tol = 1e-9);

/// Majorant of the perturbation term plus its (possibly mismatched) delays.
struct PerturbationSpec {
  Majorant L_R;              // slots = aux slot count
  DelaySpec perturbed_delays;  // channel count matches the auxiliary's
  double epsilon = 0.0;      // target bound on the perturbed solution
};

struct RobustProbeReport {
  double max_z = 0.0;
  bool within_epsilon = false;
  bool blowup = false;
  // Measured perturbation drivers, for interpretation against the target bound.
  double history_sup = 0.0;
  double perturbation_sup = 0.0;   // sup of L_R over t with all arguments at epsilon
  double max_delay_mismatch = 0.0;
};

/// Solves the perturbed scalar counterpart
/// zdot = p z + c (L(z, z(t-h)) + L_R(z, z(t-h*))) for the auxiliary's
/// history and reports whether max z stays within epsilon. With L_R empty and
/// h* = h the solve reproduces the unperturbed trajectory bit-identically.
RobustProbeReport robust_probe(const ScalarAuxiliary& aux, const PerturbationSpec& pert,
                               double horizon, double step);

/// The combined perturbed auxiliary equation used by robust_probe, exposed so
/// its trajectory can be compared directly against the unperturbed solve.
ScalarAuxiliary perturbed_auxiliary(const ScalarAuxiliary& aux, const PerturbationSpec& pert);

struct ZetaBarAudit {
  bool conclusive = false;
  double max_u = 0.0;
  double zeta_bar = 0.0;
};

/// Conclusive iff the linearized solution never exceeds the validity radius.
ZetaBarAudit zeta_bar_audit(const Trajectory& u_traj, double zeta_bar);

}  // namespace delaybound
