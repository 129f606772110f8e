#include "delaybound/system.hpp"

#include <stdexcept>

namespace delaybound {

void DdeSystem::validate() const {
  if (n <= 0) throw std::invalid_argument("DdeSystem: dimension must be positive");
  if (A.dim() != n) throw std::invalid_argument("DdeSystem: A dimension mismatch");
  if (!field.empty()) {
    if (field.dim != n) throw std::invalid_argument("DdeSystem: field dimension mismatch");
    if (field.slots != delays.count() + 1) {
      throw std::invalid_argument("DdeSystem: field slot count must be delay count + 1");
    }
  }
  if (F0 < 0.0) throw std::invalid_argument("DdeSystem: F0 must be >= 0");
  if (F0 > 0.0 && static_cast<int>(forcing_envelope.size()) != n) {
    throw std::invalid_argument("DdeSystem: forcing envelope must have n components");
  }
}

Eigen::VectorXd DdeSystem::forcing_at(double t) const {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < static_cast<int>(forcing_envelope.size()); ++i) {
    e(i) = forcing_envelope[i].eval(t);
  }
  return e;
}

DdeRhs DdeSystem::rhs() const {
  validate();
  const int slots = delays.count() + 1;
  return [this, slots](double t, const Eigen::VectorXd& x,
                       const std::vector<Eigen::VectorXd>& delayed, Eigen::VectorXd& dx) {
    dx.noalias() = A.eval(t) * x;
    if (!field.empty()) {
      std::vector<Eigen::VectorXd> args(slots);
      args[0] = x;
      for (int j = 1; j < slots; ++j) args[j] = delayed[j - 1];
      Eigen::VectorXd fval(n);
      field.eval_into(t, args, fval);
      dx += fval;
    }
    if (F0 > 0.0) {
      dx += F0 * forcing_at(t);
    }
  };
}

Trajectory integrate_system(const DdeSystem& sys, const HistoryFunction& history,
                            double t0, double t_end, double step,
                            const IntegrateOptions& options) {
  return integrate(sys.n, sys.rhs(), sys.delays, history, t0, t_end, step, options);
}

}  // namespace delaybound
