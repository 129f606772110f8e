#pragma once

// The scalar auxiliary DDE ydot = p(t) y + c(t) (L(t, y, y_delayed...) +
// F0 |e(t)|), its constant-coefficient counterpart, the linearized equation,
// the Cauchy function and the particular (forced) response.

#include <functional>
#include <optional>
#include <vector>

#include "delaybound/dde.hpp"
#include "delaybound/fundamental.hpp"
#include "delaybound/majorant.hpp"
#include "delaybound/system.hpp"

namespace delaybound {

/// Scalar coefficient as a function of time: constant, closed-form expression,
/// sampled path with linear interpolation, or callback.
class CoeffPath {
 public:
  CoeffPath() : CoeffPath(0.0) {}

  explicit CoeffPath(double value) : kind_(Kind::Constant), constant_(value) {}
  static CoeffPath constant(double value) { return CoeffPath(value); }
  static CoeffPath expr(TimeExpr e);
  static CoeffPath sampled(std::vector<double> times, std::vector<double> values);
  static CoeffPath callback(std::function<double(double)> fn);

  double eval(double t) const;
  double sup(double t_lo, double t_hi, double grid_step) const;
  bool is_constant() const { return kind_ == Kind::Constant; }

 private:
  enum class Kind { Constant, Expr, Sampled, Callback };
  Kind kind_;
  double constant_ = 0.0;
  TimeExpr expr_;
  std::vector<double> times_;
  std::vector<double> values_;
  std::function<double(double)> fn_;
};

struct ScalarAuxiliary {
  CoeffPath p;
  CoeffPath c;             // clamped to >= 1 when sourced from a FundamentalPath
  double p_margin = 0.0;   // optional additive safety margin on p
  Majorant L;
  DelaySpec delays;        // shared with the vector system
  double F0 = 0.0;
  CoeffPath forcing_norm;  // |e(t)|, nonnegative
  HistoryFunction history; // scalar, nonnegative
  double t0 = 0.0;
  double horizon = 0.0;
  bool c_was_clamped = false;

  ScalarAuxiliary with_constant_history(double q) const;
};

/// Assembles the matched scalar auxiliary equation: p and c sampled from the
/// fundamental path, majorant L, delays from the vector system, forcing
/// envelope replaced by its Euclidean norm, history by the vector history's
/// norm path. Throws on horizon mismatch.
ScalarAuxiliary build_auxiliary(const DdeSystem& sys, const FundamentalPath& fp,
                                const Majorant& L, const HistoryFunction& vector_history);

Trajectory solve_auxiliary(const ScalarAuxiliary& aux, double t_end, double step,
                           const IntegrateOptions& options = {});

/// Constant-coefficient counterpart: every time-varying piece replaced by its
/// sup over the horizon grid. The sup is over the finite horizon only.
ScalarAuxiliary build_autonomous(const ScalarAuxiliary& aux, double sup_grid_step);

struct LinearScalarDde {
  CoeffPath p;
  CoeffPath c;
  double p_margin = 0.0;
  LinearizedMajorant slopes;  // P(t) = p + c*mu_1; delayed coefficients c*mu_j
  DelaySpec delays;
  double F0 = 0.0;
  CoeffPath forcing_norm;
  HistoryFunction history;
  double t0 = 0.0;
  double horizon = 0.0;
};

/// Applies the linearized majorant to the auxiliary equation. Throws on slot
/// count mismatch.
LinearScalarDde build_linearized(const ScalarAuxiliary& aux, const LinearizedMajorant& lm);

/// Solves the linear scalar DDE; optional overrides for history and F0.
Trajectory solve_linear(const LinearScalarDde& lin, double t_end, double step,
                        std::optional<HistoryFunction> history_override = std::nullopt,
                        std::optional<double> f0_override = std::nullopt,
                        std::optional<double> t0_override = std::nullopt);

/// Cauchy function C(t, s): homogeneous solution started at time s with zero
/// history on [s - h_bar, s) and value 1 at s.
Trajectory cauchy_function(const LinearScalarDde& lin, double s, double t_end, double step);

struct ParticularResponse {
  Trajectory path;      // u_nh: zero history, unit forcing amplitude
  double sup = 0.0;     // max over knots
  bool tail_growing = false;  // still rising at t_end
};

ParticularResponse particular_response(const LinearScalarDde& lin, double t_end, double step);

/// Independent route to u_nh(t_star): Simpson quadrature of the Cauchy
/// integral over [t0, t_star] with the given number of (even) intervals.
double particular_response_quadrature(const LinearScalarDde& lin, double t_star,
                                      int intervals, double step);

struct SuperpositionReport {
  double max_residual = 0.0;  // max |u - (u_h + F0 u_nh)| over knots
};

SuperpositionReport superposition(const LinearScalarDde& lin, const HistoryFunction& history,
                                  double F0, double t_end, double step);

}  // namespace delaybound
