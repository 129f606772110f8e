#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "delaybound/region.hpp"

using namespace delaybound;

namespace {

// ydot = -y + y^3: trajectories from below 1 decay, from above 1 escape.
ScalarAuxiliary cubic_scalar() {
  ScalarAuxiliary aux;
  aux.p = CoeffPath::constant(-1.0);
  aux.c = CoeffPath::constant(1.0);
  aux.L.slots = 1;
  MajorantTerm term;
  term.kind = MajorantTerm::Kind::Constant;
  term.constant = 1.0;
  term.exponents = {3};
  aux.L.terms.push_back(term);
  aux.history = HistoryFunction::constant_scalar(1.0);
  aux.horizon = 30.0;
  return aux;
}

// Constant-coefficient instance in the frozen-coefficient form: linear gain
// a1 on the state, delayed gain rho*a1 and a delayed cubic.
ScalarAuxiliary frozen_instance() {
  ScalarAuxiliary aux;
  aux.p = CoeffPath::constant(-2.9);
  aux.c = CoeffPath::constant(1.0);
  aux.L.slots = 2;
  MajorantTerm lin1;
  lin1.kind = MajorantTerm::Kind::Constant;
  lin1.constant = 1.72;
  lin1.exponents = {1, 0};
  MajorantTerm lin2 = lin1;
  lin2.constant = 0.172;
  lin2.exponents = {0, 1};
  MajorantTerm cub;
  cub.kind = MajorantTerm::Kind::Constant;
  cub.constant = 0.1;
  cub.exponents = {0, 3};
  aux.L.terms = {lin1, lin2, cub};
  aux.delays.channels.push_back(TimeExpr::constant(0.5));
  aux.delays.h_bar = 0.5;
  aux.delays.h_floor = 0.5;
  aux.history = HistoryFunction::constant_scalar(1.0);
  aux.horizon = 60.0;
  return aux;
}

// Radial system xdot = -x + |x|^2 x: divergence boundary is the unit circle
// at every angle.
DdeSystem radial_system() {
  DdeSystem sys;
  sys.n = 2;
  sys.A = TimeVaryingMatrix::diagonal(parse_expr("-1"), 2);
  sys.field.dim = 2;
  sys.field.slots = 1;
  auto mono = [](int target, std::vector<MonomialFactor> factors) {
    MonomialTerm t;
    t.target = target;
    t.coefficient = TimeExpr::constant(1.0);
    t.factors = std::move(factors);
    return t;
  };
  sys.field.monomials = {
      mono(1, {{1, 1, 3}}), mono(1, {{1, 1, 1}, {1, 2, 2}}),
      mono(2, {{1, 2, 3}}), mono(2, {{1, 2, 1}, {1, 1, 2}}),
  };
  return sys;
}

}  // namespace

TEST_CASE("classifier: decay, bounded, divergent") {
  DdeRhs decay = [](double, const Eigen::VectorXd& x, const std::vector<Eigen::VectorXd>&,
                    Eigen::VectorXd& dx) { dx = -x; };
  DdeRhs keep = [](double t, const Eigen::VectorXd&, const std::vector<Eigen::VectorXd>&,
                   Eigen::VectorXd& dx) {
    dx.resize(1);
    dx(0) = std::cos(t);
  };
  DdeRhs grow = [](double, const Eigen::VectorXd& x, const std::vector<Eigen::VectorXd>&,
                   Eigen::VectorXd& dx) { dx = x; };
  ClassifierParams params;
  const auto hist = HistoryFunction::constant_scalar(1.0);
  CHECK(classify(integrate(1, decay, {}, hist, 0.0, params.horizon, 0.01), params) ==
        Verdict::DecaysToZero);
  CHECK(classify(integrate(1, keep, {}, hist, 0.0, params.horizon, 0.01), params) ==
        Verdict::Bounded);
  CHECK(classify(integrate(1, grow, {}, hist, 0.0, params.horizon, 0.01), params) ==
        Verdict::Divergent);
}

TEST_CASE("phase-line radius of the cubic scalar equation") {
  ClassifierParams params;
  params.horizon = 30.0;
  const ScalarRadiusResult r =
      scalar_radius(cubic_scalar(), RegionMode::Stability, params, 10.0, 0.005, 0.01);
  CHECK(!r.capped);
  CHECK(!r.undetermined);
  CHECK(std::abs(r.radius - 1.0) <= 0.02);
}

TEST_CASE("bisection agrees with a dense grid scan") {
  ClassifierParams params;
  params.horizon = 60.0;
  const ScalarAuxiliary aux = frozen_instance();
  const double cap = 10.0;
  const double tol_rel = 0.01;
  const ScalarRadiusResult r =
      scalar_radius(aux, RegionMode::Stability, params, cap, tol_rel, 0.01);
  REQUIRE(!r.undetermined);

  // Independent route: scan 200 amplitudes and take the last good one before
  // the first bad verdict.
  double scan_radius = 0.0;
  const int points = 200;
  for (int i = 1; i <= points; ++i) {
    const double q = cap * i / points;
    const Trajectory traj =
        solve_auxiliary(aux.with_constant_history(q), params.horizon, 0.01);
    if (classify(traj, params) == Verdict::DecaysToZero) {
      scan_radius = q;
    } else {
      break;
    }
  }
  const double cell = cap / points;
  CHECK(std::abs(r.radius - scan_radius) <= cell + tol_rel * scan_radius);
}

TEST_CASE("forced contraction with no transition hits the cap") {
  ScalarAuxiliary aux;
  aux.p = CoeffPath::constant(-2.0);
  aux.c = CoeffPath::constant(1.0);
  aux.L.slots = 1;
  aux.F0 = 0.5;
  aux.forcing_norm = CoeffPath::constant(1.0);
  aux.history = HistoryFunction::constant_scalar(1.0);
  aux.horizon = 20.0;
  ClassifierParams params;
  const ScalarRadiusResult r =
      scalar_radius(aux, RegionMode::Boundedness, params, 50.0, 0.01, 0.01);
  CHECK(r.capped);
  CHECK(r.radius == doctest::Approx(50.0));
  CHECK_THROWS(scalar_radius(aux, RegionMode::Stability, params, 50.0, 0.01, 0.01));
}

TEST_CASE("boundary sweep of a radially symmetric system") {
  const DdeSystem sys = radial_system();
  ClassifierParams params;
  SweepParams sweep;
  sweep.angle_step = std::numbers::pi / 2.0;
  sweep.cap = 50.0;
  sweep.tol_rel = 0.01;
  sweep.initial_radius = 0.1;
  const auto boundary = vector_boundary_sweep(sys, params, sweep, 0.01);
  REQUIRE(boundary.size() == 4);
  for (const auto& point : boundary) {
    CHECK(!point.capped);
    CHECK(std::abs(point.radius - 1.0) < 0.05);
  }
  CHECK(std::abs(boundary[0].radius - boundary[2].radius) < 0.03);
  CHECK(std::abs(boundary[1].radius - boundary[3].radius) < 0.03);
}

TEST_CASE("sweep rejects angle steps that do not divide the circle") {
  SweepParams sweep;
  sweep.angle_step = 1.0;
  CHECK_THROWS(vector_boundary_sweep(radial_system(), {}, sweep, 0.01));
}

TEST_CASE("containment margin") {
  std::vector<BoundaryPoint> boundary{{0.0, 2.0, false}, {1.0, 3.0, false}};
  const ContainmentResult inside = containment_check(1.5, boundary);
  CHECK(inside.contained);
  CHECK(inside.margin == doctest::Approx(0.5));
  const ContainmentResult outside = containment_check(2.5, boundary);
  CHECK(!outside.contained);
  CHECK(outside.margin == doctest::Approx(-0.5));
}
