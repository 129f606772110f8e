#pragma once

// The vector DDE under study: xdot = A(t) x + f(t, x, x_delayed...) + F0 e(t).

#include <vector>

#include "delaybound/dde.hpp"
#include "delaybound/expr.hpp"
#include "delaybound/majorant.hpp"

namespace delaybound {

struct DdeSystem {
  int n = 0;
  TimeVaryingMatrix A;
  VectorField field;  // slots must equal delays.count() + 1
  DelaySpec delays;
  double F0 = 0.0;
  std::vector<TimeExpr> forcing_envelope;  // e(t) components, sup-norm 1 by convention

  /// Checks dimensional consistency; throws std::invalid_argument.
  void validate() const;

  Eigen::VectorXd forcing_at(double t) const;

  DdeRhs rhs() const;
};

Trajectory integrate_system(const DdeSystem& sys, const HistoryFunction& history,
                            double t0, double t_end, double step,
                            const IntegrateOptions& options = {});

}  // namespace delaybound
