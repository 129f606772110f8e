// Acceptance checks: one line per criterion, nonzero exit if any fail.
// Runs end to end in a few minutes; the region sweeps dominate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "delaybound/fundamental.hpp"
#include "delaybound/pipeline.hpp"
#include "delaybound/scenario.hpp"

using namespace delaybound;

namespace {

int failures = 0;

void report(int number, bool pass, const char* what) {
  std::printf("criterion %2d: %s - %s\n", number, pass ? "PASS" : "FAIL", what);
  if (!pass) ++failures;
}

// --- criterion 1: integrator against the stepped closed form ---------------

double stepped_exact(double t) {
  // ydot = -y(t-1), y = 1 on [-1, 0]; polynomial per unit interval.
  static std::vector<std::vector<double>> polys = [] {
    std::vector<std::vector<double>> out;
    std::vector<double> prev{1.0};
    double start = 1.0;
    for (int k = 0; k < 8; ++k) {
      std::vector<double> poly(prev.size() + 1, 0.0);
      poly[0] = start;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        poly[i + 1] = -prev[i] / static_cast<double>(i + 1);
      }
      out.push_back(poly);
      double v = 0.0;
      for (std::size_t i = poly.size(); i-- > 0;) v = v * 1.0 + poly[i];
      start = v;
      prev = poly;
    }
    return out;
  }();
  if (t <= 0.0) return 1.0;
  int k = std::min(static_cast<int>(t), static_cast<int>(polys.size()) - 1);
  double v = 0.0;
  const auto& poly = polys[k];
  for (std::size_t i = poly.size(); i-- > 0;) v = v * (t - k) + poly[i];
  return v;
}

bool criterion_1() {
  DelaySpec d;
  d.channels.push_back(TimeExpr::constant(1.0));
  d.h_bar = d.h_floor = 1.0;
  DdeRhs rhs = [](double, const Eigen::VectorXd&, const std::vector<Eigen::VectorXd>& del,
                  Eigen::VectorXd& dx) {
    dx.resize(1);
    dx(0) = -del[0](0);
  };
  auto max_err = [&](double step) {
    const Trajectory traj = integrate(1, rhs, d, HistoryFunction::constant_scalar(1.0),
                                      0.0, 6.0, step);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.knot_times().size(); ++i) {
      worst = std::max(worst, std::abs(traj.knot_states()[i](0) -
                                       stepped_exact(traj.knot_times()[i])));
    }
    return worst;
  };
  const Trajectory traj = integrate(1, rhs, d, HistoryFunction::constant_scalar(1.0), 0.0,
                                    6.0, 1.0 / 64.0);
  const bool spots = std::abs(traj.eval_scalar(1.0)) < 1e-8 &&
                     std::abs(traj.eval_scalar(2.0) + 0.5) < 1e-8;
  const double e64 = max_err(1.0 / 64.0);
  const double e128 = max_err(1.0 / 128.0);
  return spots && e64 / e128 >= 8.0;
}

// --- criterion 2: fundamental-path oracles ----------------------------------

bool criterion_2() {
  auto diag = [](const char* a, const char* b) {
    TimeVaryingMatrix M = TimeVaryingMatrix::zero(2);
    M.entry(0, 0) = parse_expr(a);
    M.entry(1, 1) = parse_expr(b);
    return M;
  };
  bool ok = true;
  {
    const FundamentalPath fp = compute_fundamental(diag("-1", "-2"), 0.0, 3.0, 0.001);
    for (double t = 0.05; t <= 2.95; t += 0.05) {
      ok = ok && std::abs(growth_rate_p(fp, t) + 1.0) < 1e-4;
      ok = ok && std::abs(condition_number_c(fp, t) - std::exp(t)) / std::exp(t) < 1e-6;
    }
  }
  {
    TimeVaryingMatrix R = TimeVaryingMatrix::zero(2);
    R.entry(0, 1) = parse_expr("1");
    R.entry(1, 0) = parse_expr("-1");
    const FundamentalPath fp = compute_fundamental(R, 0.0, 3.0, 0.001);
    for (double t = 0.05; t <= 2.95; t += 0.05) {
      ok = ok && std::abs(growth_rate_p(fp, t)) < 1e-6;
      ok = ok && std::abs(condition_number_c(fp, t) - 1.0) < 1e-6;
    }
  }
  {
    const char* lam = "-3 + 0.1*sin(5*t)";
    const FundamentalPath fp = compute_fundamental(diag(lam, lam), 0.0, 5.0, 0.001);
    const TimeExpr expr = parse_expr(lam);
    for (double t = 0.05; t <= 4.95; t += 0.05) {
      ok = ok && std::abs(growth_rate_p(fp, t) - expr.eval(t)) < 1e-4;
      ok = ok && std::abs(condition_number_c(fp, t) - 1.0) < 1e-4;
    }
  }
  return ok;
}

// --- criterion 3: bound chain on both oscillator scenarios ------------------

bool criterion_3() {
  bool ok = true;
  for (const char* name : {"sec5_case_a", "sec5_case_b"}) {
    ScenarioConfig cfg = load_scenario(name).config;
    cfg.output_stride = 20.0 / 199.0;  // 200-point grid over [0, 20]
    const SimulateArtifacts art = run_simulate(cfg);
    ok = ok && art.grid.size() == 200 && art.chain.pass && !art.chain.inconclusive;
    ok = ok && art.have_u && art.audit.conclusive;
    bool has_u_pair = false;
    for (const auto& pair : art.chain.pairs) {
      if (pair.upper_label == "u") has_u_pair = pair.worst <= 0.0;
    }
    ok = ok && has_u_pair;
  }
  return ok;
}

// --- criterion 4: majorant dominance and negative control -------------------

VectorField coupled_field() {
  VectorField f;
  f.dim = 2;
  f.slots = 3;
  MonomialTerm t1;
  t1.target = 1;
  t1.coefficient = TimeExpr::constant(1.0);
  t1.factors = {{1, 1, 3}, {2, 2, 2}};
  MonomialTerm t2;
  t2.target = 2;
  t2.coefficient = TimeExpr::constant(1.0);
  t2.factors = {{3, 2, 3}};
  f.monomials = {t1, t2};
  return f;
}

bool criterion_4() {
  const VectorField f = coupled_field();
  const Majorant L = build_majorant(f);
  const DominanceReport good = verify_dominance(f, L, 10000, 2.0, 0.0, 10.0, 2024);
  Majorant corrupted = L;
  for (auto& term : corrupted.terms) {
    term.kind = MajorantTerm::Kind::Constant;
    term.constant = 0.05;
  }
  const DominanceReport bad = verify_dominance(f, corrupted, 10000, 2.0, 0.0, 10.0, 2024);
  return good.ok() && good.samples == 10000 && !bad.ok();
}

// --- criterion 5: comparison and monotonicity suites ------------------------

bool criterion_5() {
  const SuiteReport cmp = comparison_suite(100, 7);

  ScalarAuxiliary aux;
  aux.p = CoeffPath::constant(-1.5);
  aux.c = CoeffPath::constant(1.0);
  aux.L.slots = 2;
  MajorantTerm term;
  term.kind = MajorantTerm::Kind::Constant;
  term.constant = 0.4;
  term.exponents = {0, 1};
  aux.L.terms.push_back(term);
  aux.delays.channels.push_back(TimeExpr::constant(0.5));
  aux.delays.h_bar = aux.delays.h_floor = 0.5;
  aux.history = HistoryFunction::constant_scalar(0.1);
  aux.horizon = 20.0;
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 50; ++i) pairs.emplace_back(0.02 * i + 0.25, 0.02 * i);
  const SuiteReport mono = monotonicity_suite(aux, pairs, 15.0, 0.01);
  return cmp.violations == 0 && cmp.instances == 100 && mono.violations == 0 &&
         mono.instances == 50;
}

// --- criterion 6: scalar radius oracle and grid-scan agreement --------------

bool criterion_6() {
  ScalarAuxiliary cubic;
  cubic.p = CoeffPath::constant(-1.0);
  cubic.c = CoeffPath::constant(1.0);
  cubic.L.slots = 1;
  MajorantTerm t3;
  t3.kind = MajorantTerm::Kind::Constant;
  t3.constant = 1.0;
  t3.exponents = {3};
  cubic.L.terms.push_back(t3);
  cubic.history = HistoryFunction::constant_scalar(1.0);
  cubic.horizon = 30.0;
  ClassifierParams params;
  params.horizon = 30.0;
  const ScalarRadiusResult phase =
      scalar_radius(cubic, RegionMode::Stability, params, 10.0, 0.005, 0.01);
  const bool phase_ok = std::abs(phase.radius - 1.0) <= 0.02;

  // Frozen-coefficient instance; compare bisection with a dense scan.
  ScalarAuxiliary frozen;
  frozen.p = CoeffPath::constant(-2.9);
  frozen.c = CoeffPath::constant(1.0);
  frozen.L.slots = 2;
  MajorantTerm l1, l2, c3;
  l1.kind = l2.kind = c3.kind = MajorantTerm::Kind::Constant;
  l1.constant = 1.72;
  l1.exponents = {1, 0};
  l2.constant = 0.172;
  l2.exponents = {0, 1};
  c3.constant = 0.1;
  c3.exponents = {0, 3};
  frozen.L.terms = {l1, l2, c3};
  frozen.delays.channels.push_back(TimeExpr::constant(0.5));
  frozen.delays.h_bar = frozen.delays.h_floor = 0.5;
  frozen.history = HistoryFunction::constant_scalar(1.0);
  frozen.horizon = 60.0;
  ClassifierParams long_params;
  long_params.horizon = 60.0;
  const double cap = 10.0;
  const double tol_rel = 0.01;
  const ScalarRadiusResult bisected =
      scalar_radius(frozen, RegionMode::Stability, long_params, cap, tol_rel, 0.01);
  double scan = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double q = cap * i / 200.0;
    const Trajectory traj =
        solve_auxiliary(frozen.with_constant_history(q), long_params.horizon, 0.01);
    if (classify(traj, long_params) == Verdict::DecaysToZero) {
      scan = q;
    } else {
      break;
    }
  }
  const bool scan_ok = std::abs(bisected.radius - scan) <= cap / 200.0 + tol_rel * scan;
  return phase_ok && scan_ok;
}

// --- criterion 7: superposition, Cauchy quadrature, saturation --------------

bool criterion_7() {
  Majorant L;
  L.slots = 2;
  MajorantTerm term;
  term.kind = MajorantTerm::Kind::Constant;
  term.constant = 0.3;
  term.exponents = {0, 1};
  L.terms.push_back(term);

  LinearScalarDde lin;
  lin.p = CoeffPath::constant(-1.0);
  lin.c = CoeffPath::constant(1.0);
  lin.slopes = linearize(L, 1.0);
  lin.delays.channels.push_back(TimeExpr::constant(0.5));
  lin.delays.h_bar = lin.delays.h_floor = 0.5;
  lin.F0 = 0.5;
  lin.forcing_norm = CoeffPath::expr(parse_expr("sin(t)"));
  lin.history = HistoryFunction::constant_scalar(0.7);
  lin.t0 = 0.0;
  lin.horizon = 10.0;

  const SuperpositionReport sup_rep =
      superposition(lin, HistoryFunction::constant_scalar(0.7), 0.5, 10.0, 1e-3);
  const bool residual_ok = sup_rep.max_residual <= 1e-8;

  const ParticularResponse direct = particular_response(lin, 10.0, 1e-3);
  bool quad_ok = true;
  for (double t_star : {2.0, 5.0, 8.0}) {
    const double quad = particular_response_quadrature(lin, t_star, 800, 2.5e-4);
    quad_ok = quad_ok && std::abs(direct.path.eval_scalar(t_star) - quad) < 1e-5;
  }

  LinearScalarDde plain = lin;
  plain.delays = DelaySpec{};
  plain.slopes = linearize(Majorant{1, {}}, 1.0);
  plain.F0 = 1.0;
  plain.forcing_norm = CoeffPath::constant(1.0);
  plain.history = HistoryFunction::constant_scalar(0.0);
  plain.horizon = 12.0;
  const ParticularResponse step = particular_response(plain, 12.0, 1e-3);
  const bool sat_ok = std::abs(step.sup - 1.0) < 1e-4;

  return residual_ok && quad_ok && sat_ok;
}

// --- criterion 8: region ordering, containment, sweep budget ----------------

bool criterion_8() {
  bool ok = true;
  const auto start = std::chrono::steady_clock::now();
  for (const char* name :
       {"sec5_case_a_free", "sec5_case_a", "sec5_case_b_free", "sec5_case_b"}) {
    const ScenarioConfig cfg = load_scenario(name).config;
    const RegionArtifacts art = run_region(cfg);
    ok = ok && art.boundary.size() == 200;
    ok = ok && art.ordering_ok && art.containment.margin >= 0.0;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  ok = ok && elapsed < std::chrono::minutes(10);
  return ok;
}

// --- criterion 9: robust probe, both directions -----------------------------

bool criterion_9() {
  ScalarAuxiliary aux;
  aux.p = CoeffPath::constant(-1.5);
  aux.c = CoeffPath::constant(1.0);
  aux.L.slots = 2;
  MajorantTerm term;
  term.kind = MajorantTerm::Kind::Constant;
  term.constant = 0.4;
  term.exponents = {0, 1};
  aux.L.terms.push_back(term);
  aux.delays.channels.push_back(TimeExpr::constant(0.5));
  aux.delays.h_bar = aux.delays.h_floor = 0.5;
  aux.history = HistoryFunction::constant_scalar(0.1);
  aux.horizon = 20.0;

  PerturbationSpec null_pert;
  null_pert.L_R.slots = 2;
  null_pert.perturbed_delays = aux.delays;
  null_pert.epsilon = 1.0;
  const RobustProbeReport null_probe = robust_probe(aux, null_pert, 20.0, 0.01);
  const Trajectory plain = solve_auxiliary(aux, 20.0, 0.01);
  double plain_max = 0.0;
  for (const auto& s : plain.knot_states()) plain_max = std::max(plain_max, std::abs(s(0)));
  const bool identical = null_probe.max_z == plain_max;

  auto with_gain = [&aux](double gain, double eps) {
    PerturbationSpec pert;
    pert.perturbed_delays = aux.delays;
    pert.L_R.slots = 2;
    MajorantTerm t;
    t.kind = MajorantTerm::Kind::Constant;
    t.constant = gain;
    t.exponents = {0, 1};
    pert.L_R.terms.push_back(t);
    pert.epsilon = eps;
    return pert;
  };
  const RobustProbeReport small = robust_probe(aux, with_gain(0.05, 0.2), 20.0, 0.01);
  const RobustProbeReport large = robust_probe(aux, with_gain(2.0, 0.2), 60.0, 0.01);
  return identical && small.within_epsilon && !large.within_epsilon;
}

// --- criterion 10: byte-identical reruns ------------------------------------

bool criterion_10() {
  bool ok = true;
  for (const auto& name : list_scenarios()) {
    const ScenarioConfig cfg = load_scenario(name).config;
    const std::string once = trajectory_csv(run_simulate(cfg));
    const std::string twice = trajectory_csv(run_simulate(cfg));
    ok = ok && !once.empty() && once == twice;
  }
  return ok;
}

}  // namespace

int main() {
  report(1, criterion_1(), "delay-linear integrator oracle and step-halving order");
  report(2, criterion_2(), "fundamental-path growth rate and condition number oracles");
  report(3, criterion_3(), "norm bound chain on both oscillator scenarios");
  report(4, criterion_4(), "majorant dominance sampling with negative control");
  report(5, criterion_5(), "comparison and monotonicity suites");
  report(6, criterion_6(), "scalar radius phase-line oracle and grid-scan agreement");
  report(7, criterion_7(), "superposition residual, quadrature cross-check, saturation");
  report(8, criterion_8(), "region ordering, containment and sweep budget");
  report(9, criterion_9(), "robust probe: exact null case and both escape directions");
  report(10, criterion_10(), "byte-identical CSVs across reruns");
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
