#pragma once

// Method-of-steps integration of DDEs with bounded time-varying delays.
// Fixed-step RK4 with cubic Hermite dense output; delayed stage reads land in
// already-committed intervals because the step is tied to the delay floor.

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "delaybound/expr.hpp"

namespace delaybound {

/// Delay channels h_i(t) with global bounds 0 < h_floor <= h_i(t) <= h_bar.
/// A system with no channels has h_bar = 0 and an unconstrained step.
struct DelaySpec {
  std::vector<TimeExpr> channels;
  double h_bar = 0.0;
  double h_floor = 0.0;

  int count() const { return static_cast<int>(channels.size()); }

  /// Samples every channel on [t0, t_end] at the given resolution and throws
  /// std::runtime_error if any value leaves [h_floor, h_bar].
  void validate(double t0, double t_end, double grid_step) const;
};

/// Initial data on [t0 - h_bar, t0]. Constant vector, per-component
/// expressions, a sampled path with linear interpolation, or a callback.
class HistoryFunction {
 public:
  static HistoryFunction constant(Eigen::VectorXd value);
  static HistoryFunction constant_scalar(double value);
  static HistoryFunction expressions(std::vector<TimeExpr> components);
  static HistoryFunction sampled(std::vector<double> times,
                                 std::vector<Eigen::VectorXd> states);
  static HistoryFunction callback(int dim, std::function<Eigen::VectorXd(double)> fn);

  int dim() const { return dim_; }
  Eigen::VectorXd eval(double t) const;

  /// Sup of the Euclidean norm over a grid on [t_lo, t_hi].
  double sup_norm(double t_lo, double t_hi, double grid_step) const;

 private:
  enum class Kind { Constant, Expressions, Sampled, Callback };
  Kind kind_ = Kind::Constant;
  int dim_ = 0;
  Eigen::VectorXd constant_;
  std::vector<TimeExpr> exprs_;
  std::vector<double> sample_times_;
  std::vector<Eigen::VectorXd> sample_states_;
  std::function<Eigen::VectorXd(double)> fn_;
};

struct BlowupInfo {
  double time;
  double norm;  // last finite norm observed before the blow-up was flagged
};

/// Dense trajectory: knot states plus stored derivatives, evaluated by cubic
/// Hermite interpolation inside each interval and by the attached history for
/// t <= t0. Immutable after construction.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(double t0, double h_bar, HistoryFunction history,
             std::vector<double> times, std::vector<Eigen::VectorXd> states,
             std::vector<Eigen::VectorXd> derivatives,
             std::optional<BlowupInfo> blowup = std::nullopt);

  double t0() const { return t0_; }
  double t_end() const { return times_.back(); }
  double h_bar() const { return h_bar_; }
  int dim() const { return static_cast<int>(states_.front().size()); }
  const std::vector<double>& knot_times() const { return times_; }
  const std::vector<Eigen::VectorXd>& knot_states() const { return states_; }
  const HistoryFunction& history() const { return history_; }
  const std::optional<BlowupInfo>& blowup() const { return blowup_; }

  /// History value for t <= t0, Hermite interpolant otherwise; exact at knots.
  Eigen::VectorXd eval(double t) const;
  double eval_scalar(double t) const { return eval(t)(0); }

  double max_knot_norm() const;
  double history_sup_norm(double grid_step) const;

 private:
  double t0_ = 0.0;
  double h_bar_ = 0.0;
  HistoryFunction history_;
  std::vector<double> times_;
  std::vector<Eigen::VectorXd> states_;
  std::vector<Eigen::VectorXd> derivs_;
  std::optional<BlowupInfo> blowup_;
};

/// Right-hand side contract: dx = g(t, x(t), x(t-h_1(t)), ..., x(t-h_m(t))).
using DdeRhs = std::function<void(double t, const Eigen::VectorXd& x,
                                  const std::vector<Eigen::VectorXd>& delayed,
                                  Eigen::VectorXd& dx)>;

struct IntegrateOptions {
  /// Norm beyond which the state is treated as blown up (reported, not thrown).
  double blowup_norm = 1e12;
  bool check_delay_bounds = true;
};

/// Fixed-step RK4 marching with delayed arguments read from the trajectory so
/// far via Hermite interpolation. Requires step <= h_floor / 4 when delay
/// channels are present. Blow-up (non-finite state or norm above the
/// threshold) truncates the trajectory and is reported on it.
Trajectory integrate(int dim, const DdeRhs& rhs, const DelaySpec& delays,
                     const HistoryFunction& history, double t0, double t_end,
                     double step, const IntegrateOptions& options = {});

Eigen::VectorXd eval_trajectory(const Trajectory& traj, double t);

/// Euclidean norms of the trajectory at the requested times.
std::vector<std::pair<double, double>> norm_path(const Trajectory& traj,
                                                 const std::vector<double>& grid);

/// Uniform grid helper: count = 1 + floor((t_hi - t_lo)/stride) points.
std::vector<double> uniform_grid(double t_lo, double t_hi, double stride);

}  // namespace delaybound
