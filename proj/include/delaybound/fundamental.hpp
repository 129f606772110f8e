#pragma once

// Fundamental matrix w(t) of xdot = A(t) x with w(t0) = I, plus the derived
// growth rate p(t) = d ln|w(t)|/dt and running condition number
// c(t) = sigma_max(t) / sigma_min(t).

#include <Eigen/Core>
#include <vector>

#include "delaybound/expr.hpp"

namespace delaybound {

struct FundamentalPath {
  double t0 = 0.0;
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> w;
  std::vector<double> sigma_max;
  std::vector<double> sigma_min;
  std::vector<double> log_norm;  // ln sigma_max, the realization of d(t)
  std::vector<double> p;         // finite differences of log_norm
  std::vector<double> c;         // sigma_max / sigma_min, clamped to >= 1

  /// Knots where the finite-difference jump in p exceeds 10x its neighbors,
  /// flagging likely singular-value crossings (kinks in ln|w|).
  std::vector<std::size_t> kink_knots;
  /// True when any raw sigma ratio dipped below 1 by rounding and was clamped.
  bool c_clamped = false;

  double t_end() const { return times.back(); }
};

/// Integrates the matrix ODE wdot = A(t) w, w(t0) = I with RK4 and computes
/// singular values at every knot. Throws if w becomes numerically singular
/// (sigma_min below 1e-300) or non-finite.
FundamentalPath compute_fundamental(const TimeVaryingMatrix& A, double t0,
                                    double t_end, double step);

/// p(t) by linear interpolation of the knot samples (central differences of
/// ln sigma_max inside the horizon, one-sided at the ends).
double growth_rate_p(const FundamentalPath& path, double t);

/// c(t) by linear interpolation between knots; always >= 1.
double condition_number_c(const FundamentalPath& path, double t);

}  // namespace delaybound
