#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "delaybound/fundamental.hpp"

using namespace delaybound;

namespace {

TimeVaryingMatrix diag2(const char* a, const char* b) {
  TimeVaryingMatrix M = TimeVaryingMatrix::zero(2);
  M.entry(0, 0) = parse_expr(a);
  M.entry(1, 1) = parse_expr(b);
  return M;
}

}  // namespace

TEST_CASE("diagonal constant system: growth rate and condition number") {
  const FundamentalPath path = compute_fundamental(diag2("-1", "-2"), 0.0, 3.0, 0.001);
  for (double t : {0.1, 0.5, 1.0, 2.0, 2.9}) {
    CHECK(std::abs(growth_rate_p(path, t) - (-1.0)) < 1e-4);
    const double c = condition_number_c(path, t);
    CHECK(std::abs(c - std::exp(t)) / std::exp(t) < 1e-6);
  }
}

TEST_CASE("rotation generator: isometric flow") {
  TimeVaryingMatrix A = TimeVaryingMatrix::zero(2);
  A.entry(0, 1) = parse_expr("1");
  A.entry(1, 0) = parse_expr("-1");
  const FundamentalPath path = compute_fundamental(A, 0.0, 3.0, 0.001);
  for (double t : {0.2, 1.1, 2.7}) {
    CHECK(std::abs(growth_rate_p(path, t)) < 1e-6);
    CHECK(std::abs(condition_number_c(path, t) - 1.0) < 1e-6);
  }
}

TEST_CASE("scaled identity with sinusoidal drift: p tracks the drift, c stays 1") {
  const char* lambda = "-3 + 0.1*sin(5*t)";
  const FundamentalPath path = compute_fundamental(diag2(lambda, lambda), 0.0, 5.0, 0.001);
  const TimeExpr expr = parse_expr(lambda);
  for (double t : {0.3, 1.0, 2.5, 4.7}) {
    CHECK(std::abs(growth_rate_p(path, t) - expr.eval(t)) < 1e-4);
    CHECK(std::abs(condition_number_c(path, t) - 1.0) < 1e-4);
  }
}

TEST_CASE("condition number is clamped to at least 1") {
  const char* lambda = "-1";
  const FundamentalPath path = compute_fundamental(diag2(lambda, lambda), 0.0, 2.0, 0.01);
  for (double c : path.c) CHECK(c >= 1.0);
}

TEST_CASE("singular-value crossing is flagged as a kink") {
  // Integrated diagonals -t and -2t + t^2/2 cross at t = 2: the leading
  // singular value switches branch and ln sigma_max has a corner there.
  const FundamentalPath path = compute_fundamental(diag2("-1", "-2 + t"), 0.0, 4.0, 0.01);
  REQUIRE(!path.kink_knots.empty());
  bool near_crossing = false;
  for (std::size_t idx : path.kink_knots) {
    if (std::abs(path.times[idx] - 2.0) < 0.1) near_crossing = true;
  }
  CHECK(near_crossing);
  // Away from the crossing p matches the active branch.
  CHECK(std::abs(growth_rate_p(path, 1.0) - (-1.0)) < 1e-3);
  CHECK(std::abs(growth_rate_p(path, 3.5) - (-2.0 + 3.5)) < 1e-3);
}

TEST_CASE("numerically singular flow throws") {
  // Strong contraction drives sigma_min under the representable floor.
  const char* lambda = "-300";
  CHECK_THROWS(compute_fundamental(diag2(lambda, lambda), 0.0, 4.0, 0.0005));
}
