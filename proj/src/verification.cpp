#include "delaybound/verification.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace delaybound {

BoundReport bound_chain(const std::vector<ChainMember>& members,
                        const std::vector<double>& grid, double tol_abs, double tol_rel) {
  if (members.size() < 2) {
    throw std::invalid_argument("bound_chain: need at least two members");
  }
  for (const auto& member : members) {
    if (member.values.size() != grid.size()) {
      throw std::invalid_argument("bound_chain: member '" + member.label +
                                  "' does not match the grid");
    }
  }
  BoundReport report;
  report.grid = grid;
  report.tol_abs = tol_abs;
  report.tol_rel = tol_rel;
  for (std::size_t k = 0; k + 1 < members.size(); ++k) {
    PairViolation pair;
    pair.lower_label = members[k].label;
    pair.upper_label = members[k + 1].label;
    pair.worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double lower = members[k].values[i];
      const double upper = members[k + 1].values[i];
      // A blown-up upper member bounds anything; a blown-up lower member under
      // a finite upper one is a hard violation.
      if (!std::isfinite(upper)) continue;
      const double violation = std::isfinite(lower)
                                   ? lower - (upper + tol_abs + tol_rel * upper)
                                   : std::numeric_limits<double>::infinity();
      if (violation > pair.worst) {
        pair.worst = violation;
        pair.worst_time = grid[i];
      }
    }
    if (pair.worst > 0.0) report.pass = false;
    report.pairs.push_back(pair);
  }
  return report;
}

ChainMember sample_norm_member(const std::string& label, const Trajectory& traj,
                               const std::vector<double>& grid) {
  ChainMember member;
  member.label = label;
  member.values.reserve(grid.size());
  for (double t : grid) {
    member.values.push_back(traj.eval(t).norm());
  }
  return member;
}

SuiteReport comparison_suite(int pair_count, std::uint64_t seed,
                             const ComparisonSuiteParams& params) {
  if (pair_count < 1) throw std::invalid_argument("comparison_suite: pair_count >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SuiteReport report;
  report.instances = pair_count;
  report.worst = -std::numeric_limits<double>::infinity();

  for (int instance = 0; instance < pair_count; ++instance) {
    const int m = 1 + static_cast<int>(unit(rng) * 2.0);  // 1 or 2 delay channels
    DelaySpec delays;
    double h_min = 1e9, h_max = 0.0;
    for (int j = 0; j < m; ++j) {
      const double h = 0.3 + 0.7 * unit(rng);
      delays.channels.push_back(TimeExpr::constant(h));
      h_min = std::min(h_min, h);
      h_max = std::max(h_max, h);
    }
    delays.h_floor = h_min;
    delays.h_bar = h_max;

    const double a = -2.0 + 1.0 * unit(rng);  // drift in [-2, -1]
    std::vector<double> b(m);
    for (int j = 0; j < m; ++j) b[j] = 0.3 * unit(rng);  // nonneg delayed coefficients
    const double offset = 0.3 * unit(rng);  // f2 = f1 + offset
    const double eps_quadratic = 0.1 * unit(rng);
    const double phi1 = unit(rng);
    const double phi2 = phi1 + 0.5 * unit(rng);

    auto base = [a, b, m](double t, double y, const std::vector<Eigen::VectorXd>& delayed) {
      double du = a * y + 0.1 * std::sin(t);
      for (int j = 0; j < m; ++j) du += b[j] * delayed[j](0);
      return du;
    };
    DdeRhs rhs1 = [base](double t, const Eigen::VectorXd& x,
                         const std::vector<Eigen::VectorXd>& delayed, Eigen::VectorXd& dx) {
      dx.resize(1);
      dx(0) = base(t, x(0), delayed);
    };
    // Extra terms are nonnegative and monotone nondecreasing in the delayed
    // arguments, which is what the comparison hypotheses require.
    DdeRhs rhs2 = [base, offset, eps_quadratic](double t, const Eigen::VectorXd& x,
                                                const std::vector<Eigen::VectorXd>& delayed,
                                                Eigen::VectorXd& dx) {
      const double d0 = std::max(delayed[0](0), 0.0);
      dx.resize(1);
      dx(0) = base(t, x(0), delayed) + offset + eps_quadratic * d0 * d0;
    };

    const double step = std::min(params.step, delays.h_floor / 4.0);
    const Trajectory u1 = integrate(1, rhs1, delays, HistoryFunction::constant_scalar(phi1),
                                    0.0, params.horizon, step);
    const Trajectory u2 = integrate(1, rhs2, delays, HistoryFunction::constant_scalar(phi2),
                                    0.0, params.horizon, step);

    const std::size_t count = std::min(u1.knot_states().size(), u2.knot_states().size());
    for (std::size_t i = 0; i < count; ++i) {
      const double v1 = u1.knot_states()[i](0);
      const double v2 = u2.knot_states()[i](0);
      const double violation = v1 - v2 - params.tol_abs - params.tol_rel * std::abs(v2);
      if (violation > report.worst) {
        report.worst = violation;
        report.worst_time = u1.knot_times()[i];
        report.worst_instance = instance;
      }
      if (violation > 0.0) {
        ++report.violations;
        break;
      }
    }
  }
  return report;
}

SuiteReport monotonicity_suite(const ScalarAuxiliary& aux,
                               const std::vector<std::pair<double, double>>& q_pairs,
                               double horizon, double step, double tol) {
  SuiteReport report;
  report.instances = static_cast<int>(q_pairs.size());
  report.worst = -std::numeric_limits<double>::infinity();
  int instance = 0;
  for (const auto& [q1, q2] : q_pairs) {
    if (q1 < q2 || q2 < 0.0) {
      throw std::invalid_argument("monotonicity_suite: pairs must satisfy q1 >= q2 >= 0");
    }
    const Trajectory y1 = solve_auxiliary(aux.with_constant_history(q1), aux.t0 + horizon, step);
    const Trajectory y2 = solve_auxiliary(aux.with_constant_history(q2), aux.t0 + horizon, step);
    const std::size_t count = std::min(y1.knot_states().size(), y2.knot_states().size());
    for (std::size_t i = 0; i < count; ++i) {
      const double violation = y2.knot_states()[i](0) - y1.knot_states()[i](0) - tol;
      if (violation > report.worst) {
        report.worst = violation;
        report.worst_time = y1.knot_times()[i];
        report.worst_instance = instance;
      }
      if (violation > 0.0) {
        ++report.violations;
        break;
      }
    }
    ++instance;
  }
  return report;
}

ScalarAuxiliary perturbed_auxiliary(const ScalarAuxiliary& aux, const PerturbationSpec& pert) {
  const int m = aux.delays.count();
  if (pert.perturbed_delays.count() != m) {
    throw std::invalid_argument("perturbed_auxiliary: delay channel count mismatch");
  }
  if (!pert.L_R.terms.empty() && pert.L_R.slots != m + 1) {
    throw std::invalid_argument("perturbed_auxiliary: L_R slot count mismatch");
  }

  ScalarAuxiliary combined = aux;
  combined.delays.channels.insert(combined.delays.channels.end(),
                                  pert.perturbed_delays.channels.begin(),
                                  pert.perturbed_delays.channels.end());
  if (m > 0) {
    combined.delays.h_bar = std::max(aux.delays.h_bar, pert.perturbed_delays.h_bar);
    combined.delays.h_floor = std::min(aux.delays.h_floor, pert.perturbed_delays.h_floor);
  }

  const int slots = 1 + 2 * m;
  combined.L.slots = slots;
  for (auto& term : combined.L.terms) {
    term.exponents.resize(slots, 0);
  }
  for (const auto& term : pert.L_R.terms) {
    MajorantTerm shifted = term;
    shifted.exponents.assign(slots, 0);
    shifted.exponents[0] = term.exponents[0];
    for (int j = 1; j <= m; ++j) {
      shifted.exponents[m + j] = term.exponents[j];
    }
    combined.L.terms.push_back(std::move(shifted));
  }
  return combined;
}

RobustProbeReport robust_probe(const ScalarAuxiliary& aux, const PerturbationSpec& pert,
                               double horizon, double step) {
  if (aux.F0 > 0.0) {
    throw std::invalid_argument("robust_probe: requires a homogeneous auxiliary (F0 = 0)");
  }
  const ScalarAuxiliary combined = perturbed_auxiliary(aux, pert);
  const Trajectory z = solve_auxiliary(combined, aux.t0 + horizon, step);

  RobustProbeReport report;
  for (const auto& state : z.knot_states()) {
    report.max_z = std::max(report.max_z, std::abs(state(0)));
  }
  report.blowup = z.blowup().has_value();
  report.within_epsilon = !report.blowup && report.max_z <= pert.epsilon;
  report.history_sup = aux.history.sup_norm(aux.t0 - aux.delays.h_bar, aux.t0,
                                            std::max(aux.delays.h_bar / 64.0, 1e-6));

  if (!pert.L_R.terms.empty()) {
    const std::vector<double> corner(pert.L_R.slots, pert.epsilon);
    const int grid = 200;
    for (int k = 0; k <= grid; ++k) {
      const double t = aux.t0 + horizon * k / grid;
      report.perturbation_sup = std::max(report.perturbation_sup, pert.L_R.eval(t, corner));
    }
  }
  const int m = aux.delays.count();
  for (int j = 0; j < m; ++j) {
    const int grid = 200;
    for (int k = 0; k <= grid; ++k) {
      const double t = aux.t0 + horizon * k / grid;
      report.max_delay_mismatch =
          std::max(report.max_delay_mismatch, std::abs(aux.delays.channels[j].eval(t) -
                                                       pert.perturbed_delays.channels[j].eval(t)));
    }
  }
  return report;
}

ZetaBarAudit zeta_bar_audit(const Trajectory& u_traj, double zeta_bar) {
  ZetaBarAudit audit;
  audit.zeta_bar = zeta_bar;
  for (const auto& state : u_traj.knot_states()) {
    audit.max_u = std::max(audit.max_u, std::abs(state(0)));
  }
  audit.conclusive = audit.max_u <= zeta_bar;
  return audit;
}

}  // namespace delaybound
