#include "delaybound/region.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace delaybound {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::DecaysToZero:
      return "decays_to_zero";
    case Verdict::Bounded:
      return "bounded";
    case Verdict::Divergent:
      return "divergent";
  }
  return "?";
}

Verdict classify(const Trajectory& traj, const ClassifierParams& params) {
  if (traj.blowup()) return Verdict::Divergent;

  const double hist_scale =
      std::max(traj.history_sup_norm(std::max(traj.h_bar() / 64.0, 1e-6)), 1.0);
  if (traj.max_knot_norm() > params.divergence_factor * hist_scale) {
    return Verdict::Divergent;
  }

  const double t_end = traj.t_end();
  const double tail_start = t_end - params.tail_fraction * (t_end - traj.t0());
  double tail_max = 0.0;
  const auto& times = traj.knot_times();
  const auto& states = traj.knot_states();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= tail_start) {
      tail_max = std::max(tail_max, states[i].norm());
    }
  }
  return tail_max < params.decay_threshold ? Verdict::DecaysToZero : Verdict::Bounded;
}

namespace {

Verdict probe_scalar(const ScalarAuxiliary& aux, double q, const ClassifierParams& params,
                     double step) {
  const Trajectory traj =
      solve_auxiliary(aux.with_constant_history(q), aux.t0 + params.horizon, step);
  return classify(traj, params);
}

bool verdict_good(Verdict v, RegionMode mode) {
  return mode == RegionMode::Stability ? v == Verdict::DecaysToZero : v != Verdict::Divergent;
}

}  // namespace

ScalarRadiusResult scalar_radius(const ScalarAuxiliary& aux, RegionMode mode,
                                 const ClassifierParams& params, double cap,
                                 double tol_rel, double step) {
  if (!(cap > 0.0)) throw std::invalid_argument("scalar_radius: cap must be positive");
  if (mode == RegionMode::Stability && aux.F0 > 0.0) {
    throw std::invalid_argument("scalar_radius: stability mode requires F0 = 0");
  }

  ScalarRadiusResult result;
  const Verdict at_cap = probe_scalar(aux, cap, params, step);
  if (verdict_good(at_cap, mode)) {
    result.radius = cap;
    result.capped = true;
    result.verdict_below = at_cap;
    result.verdict_above = at_cap;
    return result;
  }

  // Geometric descent to a good lower bracket.
  double hi = cap;
  Verdict hi_verdict = at_cap;
  double lo = cap;
  Verdict lo_verdict = at_cap;
  const double floor = cap * 1e-9;
  while (lo > floor) {
    lo /= 2.0;
    lo_verdict = probe_scalar(aux, lo, params, step);
    if (verdict_good(lo_verdict, mode)) break;
    hi = lo;
    hi_verdict = lo_verdict;
  }
  if (!verdict_good(lo_verdict, mode)) {
    result.undetermined = true;
    result.verdict_below = lo_verdict;
    result.verdict_above = hi_verdict;
    return result;
  }

  while (hi - lo > tol_rel * lo) {
    const double mid = 0.5 * (lo + hi);
    const Verdict v = probe_scalar(aux, mid, params, step);
    if (verdict_good(v, mode)) {
      lo = mid;
      lo_verdict = v;
    } else {
      hi = mid;
      hi_verdict = v;
    }
  }
  result.radius = lo;
  result.verdict_below = lo_verdict;
  result.verdict_above = hi_verdict;
  return result;
}

std::vector<BoundaryPoint> vector_boundary_sweep(const DdeSystem& sys,
                                                 const ClassifierParams& params,
                                                 const SweepParams& sweep, double step) {
  sys.validate();
  if (!(sweep.angle_step > 0.0)) {
    throw std::invalid_argument("vector_boundary_sweep: angle_step must be positive");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const long count = std::lround(two_pi / sweep.angle_step);
  if (count < 1 || std::abs(count * sweep.angle_step - two_pi) > 1e-9) {
    throw std::invalid_argument("vector_boundary_sweep: angle_step must divide 2*pi");
  }

  auto divergent_at = [&](double angle, double radius) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(sys.n);
    x0(sweep.plane_axis_a) = radius * std::cos(angle);
    x0(sweep.plane_axis_b) = radius * std::sin(angle);
    const Trajectory traj = integrate_system(sys, HistoryFunction::constant(x0), sweep.t0,
                                             sweep.t0 + params.horizon, step);
    return classify(traj, params) == Verdict::Divergent;
  };

  std::vector<BoundaryPoint> boundary;
  boundary.reserve(count);
  for (long k = 0; k < count; ++k) {
    const double angle = sweep.angle_step * static_cast<double>(k);
    BoundaryPoint point;
    point.angle = angle;

    double lo = sweep.initial_radius;
    // Descend first if even the initial radius diverges.
    while (lo > sweep.cap * 1e-12 && divergent_at(angle, lo)) {
      lo /= sweep.escalation;
    }
    if (divergent_at(angle, lo)) {
      point.radius = lo;
      boundary.push_back(point);
      continue;
    }
    double hi = lo;
    bool bracketed = false;
    while (hi < sweep.cap) {
      const double next = std::min(hi * sweep.escalation, sweep.cap);
      if (divergent_at(angle, next)) {
        hi = next;
        bracketed = true;
        break;
      }
      lo = next;
      hi = next;
    }
    if (!bracketed) {
      point.radius = sweep.cap;
      point.capped = true;
      boundary.push_back(point);
      continue;
    }
    while (hi - lo > sweep.tol_rel * lo) {
      const double mid = 0.5 * (lo + hi);
      if (divergent_at(angle, mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    point.radius = lo;
    boundary.push_back(point);
  }
  return boundary;
}

ContainmentResult containment_check(double r, const std::vector<BoundaryPoint>& boundary) {
  if (boundary.empty()) {
    throw std::invalid_argument("containment_check: boundary must be nonempty");
  }
  double min_radius = boundary.front().radius;
  for (const auto& point : boundary) min_radius = std::min(min_radius, point.radius);
  ContainmentResult result;
  result.margin = min_radius - r;
  result.contained = r <= min_radius + 1e-12;
  return result;
}

}  // namespace delaybound
