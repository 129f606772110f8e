#include "delaybound/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "delaybound/fundamental.hpp"

namespace delaybound {

namespace {

constexpr double kChainTolAbs = 1e-6;
constexpr double kChainTolRel = 1e-3;

double sample_or_nan(const Trajectory& traj, double t, bool scalar) {
  if (traj.blowup() && t > traj.t_end() + 1e-12) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double t_clamped = std::min(t, traj.t_end());
  return scalar ? traj.eval_scalar(t_clamped) : traj.eval(t_clamped).norm();
}

std::vector<double> sample_curve(const Trajectory& traj, const std::vector<double>& grid,
                                 bool scalar) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid) values.push_back(sample_or_nan(traj, t, scalar));
  return values;
}

void write_text(const std::string& path, const std::string& bytes,
                std::vector<std::string>& files) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << bytes;
  files.push_back(path);
}

struct AuxiliaryBundle {
  DdeSystem sys;
  HistoryFunction hist;
  Majorant L;
  ScalarAuxiliary aux;
};

AuxiliaryBundle make_auxiliary(const ScenarioConfig& cfg, double horizon) {
  AuxiliaryBundle bundle{cfg.system(), cfg.history(), {}, {}};
  bundle.sys.validate();
  const FundamentalPath fp =
      compute_fundamental(cfg.A, cfg.t0, cfg.t0 + horizon, cfg.step);
  bundle.L = build_majorant(bundle.sys.field);
  bundle.aux = build_auxiliary(bundle.sys, fp, bundle.L, bundle.hist);
  bundle.aux.p_margin = cfg.p_margin;
  return bundle;
}

}  // namespace

std::string csv_cell(double value) {
  if (!std::isfinite(value)) return "blowup";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

SimulateArtifacts run_simulate(const ScenarioConfig& cfg) {
  SimulateArtifacts art;
  AuxiliaryBundle bundle = make_auxiliary(cfg, cfg.t_end - cfg.t0);

  const Trajectory x =
      integrate_system(bundle.sys, bundle.hist, cfg.t0, cfg.t_end, cfg.step);
  const Trajectory y = solve_auxiliary(bundle.aux, cfg.t_end, cfg.step);
  const ScalarAuxiliary auxhat = build_autonomous(bundle.aux, cfg.step);
  const Trajectory yhat = solve_auxiliary(auxhat, cfg.t_end, cfg.step);

  art.c_clamped = bundle.aux.c_was_clamped;
  art.grid = uniform_grid(cfg.t0, cfg.t_end, cfg.output_stride);
  art.norm_x = sample_curve(x, art.grid, false);
  art.y = sample_curve(y, art.grid, true);
  art.yhat = sample_curve(yhat, art.grid, true);

  std::vector<ChainMember> members{{"norm_x", art.norm_x}, {"y", art.y}, {"yhat", art.yhat}};
  art.chain = bound_chain(members, art.grid, kChainTolAbs, kChainTolRel);

  if (cfg.zeta_bar) {
    const LinearizedMajorant lm = linearize(bundle.L, *cfg.zeta_bar);
    const LinearScalarDde lin = build_linearized(bundle.aux, lm);
    const Trajectory u = solve_linear(lin, cfg.t_end, cfg.step);
    art.u = sample_curve(u, art.grid, true);
    art.have_u = true;
    art.audit = zeta_bar_audit(u, *cfg.zeta_bar);
    if (art.audit.conclusive) {
      const BoundReport linear_chain = bound_chain(
          {{"y", art.y}, {"u", art.u}}, art.grid, kChainTolAbs, kChainTolRel);
      art.chain.pairs.insert(art.chain.pairs.end(), linear_chain.pairs.begin(),
                             linear_chain.pairs.end());
      if (!linear_chain.pass) art.chain.pass = false;
    } else {
      art.chain.inconclusive = true;
    }
  }
  return art;
}

RegionArtifacts run_region(const ScenarioConfig& cfg) {
  RegionArtifacts art;
  art.mode = cfg.F0 > 0.0 ? RegionMode::Boundedness : RegionMode::Stability;

  AuxiliaryBundle bundle = make_auxiliary(cfg, cfg.scalar_horizon);

  ClassifierParams scalar_params = cfg.classifier;
  scalar_params.horizon = cfg.scalar_horizon;
  art.nonautonomous = scalar_radius(bundle.aux, art.mode, scalar_params, cfg.sweep_cap,
                                    cfg.sweep_tol_rel, cfg.step);
  const ScalarAuxiliary auxhat = build_autonomous(bundle.aux, cfg.step);
  art.autonomous = scalar_radius(auxhat, art.mode, scalar_params, cfg.sweep_cap,
                                 cfg.sweep_tol_rel, cfg.step);

  SweepParams sweep;
  sweep.t0 = cfg.t0;
  sweep.angle_step = cfg.angle_step;
  sweep.cap = cfg.sweep_cap;
  sweep.tol_rel = cfg.sweep_tol_rel;
  sweep.initial_radius = cfg.sweep_initial_radius;
  art.boundary = vector_boundary_sweep(bundle.sys, cfg.classifier, sweep, cfg.step);

  art.containment = containment_check(art.nonautonomous.radius, art.boundary);
  const double slack = 1e-12;
  art.ordering_ok = art.autonomous.radius <= art.nonautonomous.radius + slack &&
                    art.containment.contained;
  return art;
}

RunResult run_verify(const ScenarioConfig& cfg, const std::string& suite) {
  RunResult result;
  std::ostringstream report;
  report << "suite = " << suite << "\n";
  report << "seed = " << cfg.seed << "\n";

  if (suite == "comparison") {
    const SuiteReport rep = comparison_suite(cfg.suite_count, cfg.seed);
    report << "instances = " << rep.instances << "\n";
    report << "violations = " << rep.violations << "\n";
    report << "worst = " << csv_cell(rep.worst) << "\n";
    result.exit_code = rep.pass() ? 0 : 1;
  } else if (suite == "monotonicity") {
    AuxiliaryBundle bundle = make_auxiliary(cfg, cfg.classifier.horizon);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < cfg.suite_count; ++i) {
      const double q1 = 2.0 * unit(rng);
      pairs.emplace_back(q1, q1 * unit(rng));
    }
    const SuiteReport rep =
        monotonicity_suite(bundle.aux, pairs, cfg.classifier.horizon, cfg.step);
    report << "instances = " << rep.instances << "\n";
    report << "violations = " << rep.violations << "\n";
    report << "worst = " << csv_cell(rep.worst) << "\n";
    result.exit_code = rep.pass() ? 0 : 1;
  } else if (suite == "robust") {
    AuxiliaryBundle bundle = make_auxiliary(cfg, cfg.classifier.horizon);
    if (bundle.aux.F0 > 0.0) {
      bundle.aux.F0 = 0.0;
      report << "note = forcing disabled for the homogeneous probe\n";
    }
    const double horizon = cfg.classifier.horizon;

    // Null perturbation: the combined solve must reproduce the plain solve
    // exactly, not just within tolerance.
    PerturbationSpec null_pert;
    null_pert.L_R.slots = bundle.aux.L.slots;
    null_pert.perturbed_delays = bundle.aux.delays;
    null_pert.epsilon = std::numeric_limits<double>::infinity();
    const RobustProbeReport null_probe =
        robust_probe(bundle.aux, null_pert, horizon, cfg.step);
    const Trajectory plain =
        solve_auxiliary(bundle.aux, bundle.aux.t0 + horizon, cfg.step);
    double plain_max = 0.0;
    for (const auto& s : plain.knot_states()) plain_max = std::max(plain_max, std::abs(s(0)));
    const bool identical = null_probe.max_z == plain_max;
    report << "null_perturbation_identical = " << (identical ? "yes" : "no") << "\n";

    bool small_ok = true;
    if (bundle.aux.delays.count() > 0) {
      PerturbationSpec small;
      small.perturbed_delays = bundle.aux.delays;
      small.L_R.slots = bundle.aux.L.slots;
      MajorantTerm term;
      term.kind = MajorantTerm::Kind::Constant;
      term.constant = 0.05;
      term.exponents.assign(small.L_R.slots, 0);
      term.exponents[1] = 1;
      small.L_R.terms.push_back(term);
      small.epsilon = 2.0 * std::max(plain_max, 1e-6);
      const RobustProbeReport probe = robust_probe(bundle.aux, small, horizon, cfg.step);
      small_ok = probe.within_epsilon;
      report << "small_perturbation_max = " << csv_cell(probe.max_z) << "\n";
      report << "small_perturbation_within = " << (small_ok ? "yes" : "no") << "\n";
    }
    result.exit_code = identical && small_ok ? 0 : 1;
  } else if (suite == "dominance") {
    DdeSystem sys = cfg.system();
    sys.validate();
    const Majorant L = build_majorant(sys.field);
    const DominanceReport rep =
        verify_dominance(sys.field, L, 10000, 2.0, cfg.t0, cfg.t_end, cfg.seed);
    report << "samples = " << rep.samples << "\n";
    report << "max_deficit = " << csv_cell(rep.max_deficit) << "\n";
    result.exit_code = rep.ok() ? 0 : 1;
  } else {
    throw std::invalid_argument("unknown suite: " + suite +
                                " (expected comparison, monotonicity, robust, dominance)");
  }
  report << "pass = " << (result.exit_code == 0 ? "yes" : "no") << "\n";
  result.report = report.str();
  return result;
}

std::string trajectory_csv(const SimulateArtifacts& art) {
  std::ostringstream out;
  out << "t,norm_x,y,yhat" << (art.have_u ? ",u" : "") << "\n";
  for (std::size_t i = 0; i < art.grid.size(); ++i) {
    out << csv_cell(art.grid[i]) << ',' << csv_cell(art.norm_x[i]) << ','
        << csv_cell(art.y[i]) << ',' << csv_cell(art.yhat[i]);
    if (art.have_u) out << ',' << csv_cell(art.u[i]);
    out << "\n";
  }
  return out.str();
}

std::string polar_csv(const std::vector<BoundaryPoint>& points) {
  std::ostringstream out;
  out << "theta,r,ln_r\n";
  for (const auto& point : points) {
    out << csv_cell(point.angle) << ',' << csv_cell(point.radius) << ','
        << csv_cell(std::log(point.radius)) << "\n";
  }
  return out.str();
}

std::vector<BoundaryPoint> constant_radius_curve(double radius, double angle_step) {
  std::vector<BoundaryPoint> points;
  const long count = std::lround(2.0 * std::numbers::pi / angle_step);
  points.reserve(count);
  for (long k = 0; k < count; ++k) {
    points.push_back({angle_step * static_cast<double>(k), radius, false});
  }
  return points;
}

RunResult write_simulate(const ScenarioConfig& cfg, const SimulateArtifacts& art) {
  RunResult result;
  std::filesystem::create_directories(cfg.output_dir);
  const std::string base = cfg.output_dir + "/" + cfg.name;

  write_text(base + "_trajectory.csv", trajectory_csv(art), result.files);
  write_text(base + "_config.txt", dump_config(cfg), result.files);

  std::ostringstream report;
  report << "command = simulate\n";
  report << "scenario = " << cfg.name << "\n";
  report << "chain_pass = " << (art.chain.pass ? "yes" : "no") << "\n";
  report << "chain_inconclusive = " << (art.chain.inconclusive ? "yes" : "no") << "\n";
  for (const auto& pair : art.chain.pairs) {
    report << "worst[" << pair.lower_label << "<=" << pair.upper_label
           << "] = " << csv_cell(pair.worst) << " at t = " << csv_cell(pair.worst_time)
           << "\n";
  }
  if (art.have_u) {
    report << "audit_conclusive = " << (art.audit.conclusive ? "yes" : "no") << "\n";
    report << "audit_max_u = " << csv_cell(art.audit.max_u) << "\n";
    report << "audit_zeta_bar = " << csv_cell(art.audit.zeta_bar) << "\n";
  }
  report << "condition_clamped = " << (art.c_clamped ? "yes" : "no") << "\n";
  write_text(base + "_report.txt", report.str(), result.files);

  result.exit_code = art.chain.pass ? 0 : 1;
  result.report = report.str();
  return result;
}

RunResult write_region(const ScenarioConfig& cfg, const RegionArtifacts& art) {
  RunResult result;
  std::filesystem::create_directories(cfg.output_dir);
  const std::string base = cfg.output_dir + "/" + cfg.name;

  write_text(base + "_boundary.csv", polar_csv(art.boundary), result.files);
  write_text(base + "_radius_nonautonomous.csv",
             polar_csv(constant_radius_curve(art.nonautonomous.radius, cfg.angle_step)),
             result.files);
  write_text(base + "_radius_autonomous.csv",
             polar_csv(constant_radius_curve(art.autonomous.radius, cfg.angle_step)),
             result.files);
  write_text(base + "_config.txt", dump_config(cfg), result.files);

  std::ostringstream report;
  report << "command = region\n";
  report << "scenario = " << cfg.name << "\n";
  report << "mode = " << (art.mode == RegionMode::Stability ? "stability" : "boundedness")
         << "\n";
  report << "radius_nonautonomous = " << csv_cell(art.nonautonomous.radius)
         << (art.nonautonomous.capped ? " (capped)" : "")
         << (art.nonautonomous.undetermined ? " (undetermined)" : "") << "\n";
  report << "radius_autonomous = " << csv_cell(art.autonomous.radius)
         << (art.autonomous.capped ? " (capped)" : "")
         << (art.autonomous.undetermined ? " (undetermined)" : "") << "\n";
  double min_boundary = std::numeric_limits<double>::infinity();
  for (const auto& p : art.boundary) min_boundary = std::min(min_boundary, p.radius);
  report << "min_boundary_radius = " << csv_cell(min_boundary) << "\n";
  report << "containment_margin = " << csv_cell(art.containment.margin) << "\n";
  report << "ordering_ok = " << (art.ordering_ok ? "yes" : "no") << "\n";
  write_text(base + "_report.txt", report.str(), result.files);

  result.exit_code = art.ordering_ok ? 0 : 1;
  result.report = report.str();
  return result;
}

}  // namespace delaybound
