#include "delaybound/dde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delaybound {

void DelaySpec::validate(double t0, double t_end, double grid_step) const {
  if (channels.empty()) return;
  if (!(h_floor > 0.0) || h_floor > h_bar) {
    throw std::runtime_error("DelaySpec: requires 0 < h_floor <= h_bar");
  }
  const double tol = 1e-9 * std::max(1.0, h_bar);
  for (double t = t0; t <= t_end + 0.5 * grid_step; t += grid_step) {
    for (std::size_t i = 0; i < channels.size(); ++i) {
      const double h = channels[i].eval(std::min(t, t_end));
      if (h < h_floor - tol || h > h_bar + tol) {
        throw std::runtime_error("delay channel " + std::to_string(i + 1) +
                                 " leaves [h_floor, h_bar] at t=" + std::to_string(t));
      }
    }
  }
}

HistoryFunction HistoryFunction::constant(Eigen::VectorXd value) {
  HistoryFunction h;
  h.kind_ = Kind::Constant;
  h.dim_ = static_cast<int>(value.size());
  h.constant_ = std::move(value);
  return h;
}

HistoryFunction HistoryFunction::constant_scalar(double value) {
  Eigen::VectorXd v(1);
  v(0) = value;
  return constant(std::move(v));
}

HistoryFunction HistoryFunction::expressions(std::vector<TimeExpr> components) {
  HistoryFunction h;
  h.kind_ = Kind::Expressions;
  h.dim_ = static_cast<int>(components.size());
  h.exprs_ = std::move(components);
  return h;
}

HistoryFunction HistoryFunction::sampled(std::vector<double> times,
                                         std::vector<Eigen::VectorXd> states) {
  if (times.size() < 2 || times.size() != states.size()) {
    throw std::invalid_argument("sampled history needs >= 2 matching samples");
  }
  HistoryFunction h;
  h.kind_ = Kind::Sampled;
  h.dim_ = static_cast<int>(states.front().size());
  h.sample_times_ = std::move(times);
  h.sample_states_ = std::move(states);
  return h;
}

HistoryFunction HistoryFunction::callback(int dim, std::function<Eigen::VectorXd(double)> fn) {
  HistoryFunction h;
  h.kind_ = Kind::Callback;
  h.dim_ = dim;
  h.fn_ = std::move(fn);
  return h;
}

Eigen::VectorXd HistoryFunction::eval(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return constant_;
    case Kind::Expressions: {
      Eigen::VectorXd out(dim_);
      for (int i = 0; i < dim_; ++i) out(i) = exprs_[i].eval(t);
      return out;
    }
    case Kind::Sampled: {
      const auto& ts = sample_times_;
      if (t <= ts.front()) return sample_states_.front();
      if (t >= ts.back()) return sample_states_.back();
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
      const double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
      return (1.0 - w) * sample_states_[i] + w * sample_states_[i + 1];
    }
    case Kind::Callback:
      return fn_(t);
  }
  throw std::logic_error("corrupt history kind");
}

double HistoryFunction::sup_norm(double t_lo, double t_hi, double grid_step) const {
  double sup = 0.0;
  if (t_hi <= t_lo) return eval(t_lo).norm();
  const int n = std::max(1, static_cast<int>(std::ceil((t_hi - t_lo) / grid_step)));
  for (int k = 0; k <= n; ++k) {
    const double t = t_lo + (t_hi - t_lo) * k / n;
    sup = std::max(sup, eval(t).norm());
  }
  return sup;
}

Trajectory::Trajectory(double t0, double h_bar, HistoryFunction history,
                       std::vector<double> times, std::vector<Eigen::VectorXd> states,
                       std::vector<Eigen::VectorXd> derivatives,
                       std::optional<BlowupInfo> blowup)
    : t0_(t0),
      h_bar_(h_bar),
      history_(std::move(history)),
      times_(std::move(times)),
      states_(std::move(states)),
      derivs_(std::move(derivatives)),
      blowup_(std::move(blowup)) {
  if (times_.empty() || times_.size() != states_.size() || times_.size() != derivs_.size()) {
    throw std::invalid_argument("Trajectory: mismatched knot arrays");
  }
}

namespace {

Eigen::VectorXd hermite_eval(double t, const std::vector<double>& times,
                             const std::vector<Eigen::VectorXd>& states,
                             const std::vector<Eigen::VectorXd>& derivs) {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t i = (it == times.begin()) ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
  if (i + 1 >= times.size()) i = times.size() - 2;
  const double h = times[i + 1] - times[i];
  const double u = (t - times[i]) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
  const double h10 = u3 - 2.0 * u2 + u;
  const double h01 = -2.0 * u3 + 3.0 * u2;
  const double h11 = u3 - u2;
  return h00 * states[i] + (h10 * h) * derivs[i] + h01 * states[i + 1] +
         (h11 * h) * derivs[i + 1];
}

}  // namespace

Eigen::VectorXd Trajectory::eval(double t) const {
  const double lo = t0_ - h_bar_;
  const double tol = 1e-9 * std::max(1.0, std::abs(t_end()));
  if (t < lo - tol || t > t_end() + tol) {
    throw std::out_of_range("trajectory evaluated outside [t0 - h_bar, t_end]");
  }
  if (t <= t0_) {
    return history_.eval(std::max(t, lo));
  }
  if (times_.size() == 1) {
    return states_.front();
  }
  // Knots are exact by construction.
  const auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it != times_.end() && *it == t) {
    return states_[static_cast<std::size_t>(it - times_.begin())];
  }
  return hermite_eval(std::min(t, t_end()), times_, states_, derivs_);
}

double Trajectory::max_knot_norm() const {
  double m = 0.0;
  for (const auto& s : states_) m = std::max(m, s.norm());
  return m;
}

double Trajectory::history_sup_norm(double grid_step) const {
  return history_.sup_norm(t0_ - h_bar_, t0_, grid_step);
}

namespace {

// Delayed lookup against the partially committed trajectory.
class PartialPath {
 public:
  PartialPath(double t0, double h_bar, const HistoryFunction& history,
              const std::vector<double>& times, const std::vector<Eigen::VectorXd>& states,
              const std::vector<Eigen::VectorXd>& derivs)
      : t0_(t0), h_bar_(h_bar), history_(history), times_(times), states_(states), derivs_(derivs) {}

  Eigen::VectorXd eval(double t) const {
    const double lo = t0_ - h_bar_;
    if (t <= t0_) {
      if (t < lo - 1e-9 * std::max(1.0, h_bar_)) {
        throw std::runtime_error("delayed lookup before the history domain");
      }
      return history_.eval(std::max(t, lo));
    }
    if (t >= times_.back()) {
      if (t > times_.back() + 1e-9) {
        throw std::logic_error("delayed lookup ahead of the committed path");
      }
      return states_.back();
    }
    return hermite_eval(t, times_, states_, derivs_);
  }

 private:
  double t0_, h_bar_;
  const HistoryFunction& history_;
  const std::vector<double>& times_;
  const std::vector<Eigen::VectorXd>& states_;
  const std::vector<Eigen::VectorXd>& derivs_;
};

}  // namespace

Trajectory integrate(int dim, const DdeRhs& rhs, const DelaySpec& delays,
                     const HistoryFunction& history, double t0, double t_end,
                     double step, const IntegrateOptions& options) {
  if (!(t_end > t0)) throw std::invalid_argument("integrate: t_end must exceed t0");
  if (!(step > 0.0)) throw std::invalid_argument("integrate: step must be positive");
  if (delays.count() > 0 && step > delays.h_floor / 4.0 + 1e-12) {
    throw std::invalid_argument("integrate: step must be <= h_floor / 4");
  }
  if (history.dim() != dim) throw std::invalid_argument("integrate: history dimension mismatch");

  const long n_steps = std::max<long>(1, std::lround(std::ceil((t_end - t0) / step - 1e-12)));
  const double h = (t_end - t0) / static_cast<double>(n_steps);
  const int m = delays.count();
  const double delay_tol = 1e-9 * std::max(1.0, delays.h_bar);

  std::vector<double> times;
  std::vector<Eigen::VectorXd> states, derivs;
  times.reserve(n_steps + 1);
  states.reserve(n_steps + 1);
  derivs.reserve(n_steps + 1);

  times.push_back(t0);
  states.push_back(history.eval(t0));
  derivs.emplace_back();

  PartialPath path(t0, delays.h_bar, history, times, states, derivs);

  std::vector<Eigen::VectorXd> delayed(m);
  auto fill_delayed = [&](double t) {
    for (int j = 0; j < m; ++j) {
      const double hj = delays.channels[j].eval(t);
      if (options.check_delay_bounds &&
          (hj < delays.h_floor - delay_tol || hj > delays.h_bar + delay_tol)) {
        throw std::runtime_error("delay bound violated at t=" + std::to_string(t));
      }
      delayed[j] = path.eval(t - hj);
    }
  };

  Eigen::VectorXd k1(dim), k2(dim), k3(dim), k4(dim), xs(dim), x_next(dim);
  std::optional<BlowupInfo> blowup;

  // Derivative at the initial knot.
  fill_delayed(t0);
  rhs(t0, states[0], delayed, derivs[0]);

  for (long k = 0; k < n_steps; ++k) {
    const double tk = t0 + h * static_cast<double>(k);
    const double tm = tk + 0.5 * h;
    const double tn = t0 + h * static_cast<double>(k + 1);
    const Eigen::VectorXd& x = states.back();

    k1 = derivs.back();
    fill_delayed(tm);
    xs = x + (0.5 * h) * k1;
    rhs(tm, xs, delayed, k2);
    xs = x + (0.5 * h) * k2;
    rhs(tm, xs, delayed, k3);
    fill_delayed(tn);
    xs = x + h * k3;
    rhs(tn, xs, delayed, k4);
    x_next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const bool finite = x_next.allFinite();
    if (!finite || x_next.norm() > options.blowup_norm) {
      blowup = BlowupInfo{tn, states.back().norm()};
      break;
    }

    times.push_back(tn);
    states.push_back(x_next);
    derivs.emplace_back(dim);
    fill_delayed(tn);
    rhs(tn, states.back(), delayed, derivs.back());
    if (!derivs.back().allFinite()) {
      derivs.pop_back();
      states.pop_back();
      times.pop_back();
      blowup = BlowupInfo{tn, states.back().norm()};
      break;
    }
  }

  return Trajectory(t0, delays.h_bar, history, std::move(times), std::move(states),
                    std::move(derivs), std::move(blowup));
}

Eigen::VectorXd eval_trajectory(const Trajectory& traj, double t) { return traj.eval(t); }

std::vector<std::pair<double, double>> norm_path(const Trajectory& traj,
                                                 const std::vector<double>& grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double t : grid) {
    out.emplace_back(t, traj.eval(t).norm());
  }
  return out;
}

std::vector<double> uniform_grid(double t_lo, double t_hi, double stride) {
  const long n = std::lround(std::floor((t_hi - t_lo) / stride + 1e-9));
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (long k = 0; k <= n; ++k) {
    grid.push_back(t_lo + stride * static_cast<double>(k));
  }
  return grid;
}

}  // namespace delaybound
