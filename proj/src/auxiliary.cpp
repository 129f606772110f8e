#include "delaybound/auxiliary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delaybound {

CoeffPath CoeffPath::expr(TimeExpr e) {
  CoeffPath p;
  p.kind_ = Kind::Expr;
  p.expr_ = std::move(e);
  return p;
}

CoeffPath CoeffPath::sampled(std::vector<double> times, std::vector<double> values) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw std::invalid_argument("CoeffPath: sampled path needs >= 2 matching samples");
  }
  CoeffPath p;
  p.kind_ = Kind::Sampled;
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  return p;
}

CoeffPath CoeffPath::callback(std::function<double(double)> fn) {
  CoeffPath p;
  p.kind_ = Kind::Callback;
  p.fn_ = std::move(fn);
  return p;
}

double CoeffPath::eval(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return constant_;
    case Kind::Expr:
      return expr_.eval(t);
    case Kind::Sampled: {
      if (t <= times_.front()) return values_.front();
      if (t >= times_.back()) return values_.back();
      const auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
      const double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
      return (1.0 - w) * values_[i] + w * values_[i + 1];
    }
    case Kind::Callback:
      return fn_(t);
  }
  throw std::logic_error("corrupt coefficient path kind");
}

double CoeffPath::sup(double t_lo, double t_hi, double grid_step) const {
  if (kind_ == Kind::Constant) return constant_;
  const int n = std::max(1, static_cast<int>(std::ceil((t_hi - t_lo) / grid_step)));
  double s = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n; ++k) {
    s = std::max(s, eval(t_lo + (t_hi - t_lo) * k / n));
  }
  return s;
}

ScalarAuxiliary ScalarAuxiliary::with_constant_history(double q) const {
  ScalarAuxiliary out = *this;
  out.history = HistoryFunction::constant_scalar(q);
  return out;
}

ScalarAuxiliary build_auxiliary(const DdeSystem& sys, const FundamentalPath& fp,
                                const Majorant& L, const HistoryFunction& vector_history) {
  sys.validate();
  if (L.slots != sys.delays.count() + 1) {
    throw std::invalid_argument("build_auxiliary: majorant slot count mismatch");
  }
  if (fp.times.size() < 2) {
    throw std::invalid_argument("build_auxiliary: fundamental path too short");
  }

  ScalarAuxiliary aux;
  aux.t0 = fp.t0;
  aux.horizon = fp.t_end();
  aux.p = CoeffPath::sampled(fp.times, fp.p);
  aux.c = CoeffPath::sampled(fp.times, fp.c);
  aux.c_was_clamped = fp.c_clamped;
  aux.L = L;
  aux.delays = sys.delays;
  aux.F0 = sys.F0;

  if (sys.forcing_envelope.empty()) {
    aux.forcing_norm = CoeffPath::constant(0.0);
  } else {
    std::vector<TimeExpr> envelope = sys.forcing_envelope;
    aux.forcing_norm = CoeffPath::callback([envelope](double t) {
      double sq = 0.0;
      for (const auto& e : envelope) {
        const double v = e.eval(t);
        sq += v * v;
      }
      return std::sqrt(sq);
    });
  }

  // Matched history: the Euclidean norm path of the vector history.
  if (sys.delays.h_bar > 0.0) {
    const double knot_step = fp.times[1] - fp.times[0];
    const int count = std::max(2, static_cast<int>(std::ceil(sys.delays.h_bar / knot_step)) + 1);
    std::vector<double> ts(count);
    std::vector<Eigen::VectorXd> vs(count);
    for (int k = 0; k < count; ++k) {
      const double t = aux.t0 - sys.delays.h_bar +
                       sys.delays.h_bar * static_cast<double>(k) / (count - 1);
      ts[k] = t;
      Eigen::VectorXd v(1);
      v(0) = vector_history.eval(t).norm();
      vs[k] = v;
    }
    aux.history = HistoryFunction::sampled(std::move(ts), std::move(vs));
  } else {
    aux.history = HistoryFunction::constant_scalar(vector_history.eval(aux.t0).norm());
  }
  return aux;
}

Trajectory solve_auxiliary(const ScalarAuxiliary& aux, double t_end, double step,
                           const IntegrateOptions& options) {
  const int slots = aux.delays.count() + 1;
  std::vector<double> zeta(slots);
  DdeRhs rhs = [&aux, slots, zeta](double t, const Eigen::VectorXd& x,
                                   const std::vector<Eigen::VectorXd>& delayed,
                                   Eigen::VectorXd& dx) mutable {
    const double y = x(0);
    zeta[0] = std::max(y, 0.0);
    for (int j = 1; j < slots; ++j) zeta[j] = std::max(delayed[j - 1](0), 0.0);
    dx.resize(1);
    dx(0) = (aux.p.eval(t) + aux.p_margin) * y +
            aux.c.eval(t) * (aux.L.eval(t, zeta) + aux.F0 * aux.forcing_norm.eval(t));
  };
  return integrate(1, rhs, aux.delays, aux.history, aux.t0, t_end, step, options);
}

ScalarAuxiliary build_autonomous(const ScalarAuxiliary& aux, double sup_grid_step) {
  if (!(sup_grid_step > 0.0) || !(aux.horizon > aux.t0)) {
    throw std::invalid_argument("build_autonomous: empty sample grid");
  }
  ScalarAuxiliary out = aux;
  out.p = CoeffPath::constant(aux.p.sup(aux.t0, aux.horizon, sup_grid_step));
  out.c = CoeffPath::constant(std::max(1.0, aux.c.sup(aux.t0, aux.horizon, sup_grid_step)));
  for (auto& term : out.L.terms) {
    double sup = 0.0;
    const int n = std::max(1, static_cast<int>(std::ceil((aux.horizon - aux.t0) / sup_grid_step)));
    for (int k = 0; k <= n; ++k) {
      const double t = aux.t0 + (aux.horizon - aux.t0) * k / n;
      sup = std::max(sup, term.coefficient_at(t));
    }
    MajorantTerm flat;
    flat.kind = MajorantTerm::Kind::Constant;
    flat.constant = sup;
    flat.exponents = term.exponents;
    term = std::move(flat);
  }
  out.forcing_norm =
      CoeffPath::constant(std::max(0.0, aux.forcing_norm.sup(aux.t0, aux.horizon, sup_grid_step)));
  return out;
}

LinearScalarDde build_linearized(const ScalarAuxiliary& aux, const LinearizedMajorant& lm) {
  if (lm.slots != aux.L.slots) {
    throw std::invalid_argument("build_linearized: slot count mismatch");
  }
  LinearScalarDde lin;
  lin.p = aux.p;
  lin.c = aux.c;
  lin.p_margin = aux.p_margin;
  lin.slopes = lm;
  lin.delays = aux.delays;
  lin.F0 = aux.F0;
  lin.forcing_norm = aux.forcing_norm;
  lin.history = aux.history;
  lin.t0 = aux.t0;
  lin.horizon = aux.horizon;
  return lin;
}

Trajectory solve_linear(const LinearScalarDde& lin, double t_end, double step,
                        std::optional<HistoryFunction> history_override,
                        std::optional<double> f0_override,
                        std::optional<double> t0_override) {
  const int slots = lin.slopes.slots;
  if (slots != lin.delays.count() + 1) {
    throw std::invalid_argument("solve_linear: slope slots do not match delay channels");
  }
  const double F0 = f0_override.value_or(lin.F0);
  const double t0 = t0_override.value_or(lin.t0);
  DdeRhs rhs = [&lin, slots, F0](double t, const Eigen::VectorXd& x,
                                 const std::vector<Eigen::VectorXd>& delayed,
                                 Eigen::VectorXd& dx) {
    const double c = lin.c.eval(t);
    double du = (lin.p.eval(t) + lin.p_margin + c * lin.slopes.mu(1, t)) * x(0);
    for (int j = 2; j <= slots; ++j) {
      du += c * lin.slopes.mu(j, t) * delayed[j - 2](0);
    }
    du += c * F0 * lin.forcing_norm.eval(t);
    dx.resize(1);
    dx(0) = du;
  };
  const HistoryFunction& hist = history_override ? *history_override : lin.history;
  return integrate(1, rhs, lin.delays, hist, t0, t_end, step);
}

Trajectory cauchy_function(const LinearScalarDde& lin, double s, double t_end, double step) {
  if (s < lin.t0 - 1e-12 || s >= t_end) {
    throw std::out_of_range("cauchy_function: s must lie in [t0, t_end)");
  }
  HistoryFunction unit_pulse = HistoryFunction::callback(1, [s](double t) {
    Eigen::VectorXd v(1);
    v(0) = (t >= s) ? 1.0 : 0.0;
    return v;
  });
  return solve_linear(lin, t_end, step, unit_pulse, 0.0, s);
}

ParticularResponse particular_response(const LinearScalarDde& lin, double t_end, double step) {
  ParticularResponse out;
  out.path = solve_linear(lin, t_end, step, HistoryFunction::constant_scalar(0.0), 1.0);
  const auto& states = out.path.knot_states();
  for (const auto& v : states) out.sup = std::max(out.sup, std::abs(v(0)));
  if (states.size() >= 2) {
    const double last = states.back()(0);
    const double prev = states[states.size() - 2](0);
    out.tail_growing = std::abs(last) >= 0.999 * out.sup && last > prev;
  }
  return out;
}

double particular_response_quadrature(const LinearScalarDde& lin, double t_star,
                                      int intervals, double step) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw std::invalid_argument("particular_response_quadrature: intervals must be even >= 2");
  }
  if (!(t_star > lin.t0)) {
    throw std::invalid_argument("particular_response_quadrature: t_star must exceed t0");
  }
  const double width = (t_star - lin.t0) / intervals;
  auto integrand = [&](double s) {
    double cts;
    if (s >= t_star) {
      cts = 1.0;
    } else {
      const Trajectory c = cauchy_function(lin, s, t_star, step);
      cts = c.eval_scalar(t_star);
    }
    return cts * lin.forcing_norm.eval(s);
  };
  double sum = integrand(lin.t0) + integrand(t_star);
  for (int i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(lin.t0 + width * i);
  }
  return sum * width / 3.0;
}

SuperpositionReport superposition(const LinearScalarDde& lin, const HistoryFunction& history,
                                  double F0, double t_end, double step) {
  const Trajectory full = solve_linear(lin, t_end, step, history, F0);
  const Trajectory homogeneous = solve_linear(lin, t_end, step, history, 0.0);
  const Trajectory forced = solve_linear(lin, t_end, step, HistoryFunction::constant_scalar(0.0), 1.0);
  SuperpositionReport report;
  const std::size_t count = std::min({full.knot_states().size(), homogeneous.knot_states().size(),
                                      forced.knot_states().size()});
  for (std::size_t i = 0; i < count; ++i) {
    const double residual = std::abs(full.knot_states()[i](0) -
                                     (homogeneous.knot_states()[i](0) + F0 * forced.knot_states()[i](0)));
    report.max_residual = std::max(report.max_residual, residual);
  }
  return report;
}

}  // namespace delaybound
