#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "delaybound/expr.hpp"

using namespace delaybound;

TEST_CASE("literals, precedence, functions") {
  CHECK(parse_expr("0").eval(5.0) == 0.0);
  CHECK(parse_expr("2 + 3*4").eval(0.0) == doctest::Approx(14.0));
  CHECK(parse_expr("(2 + 3)*4").eval(0.0) == doctest::Approx(20.0));
  CHECK(parse_expr("2 - 3 - 4").eval(0.0) == doctest::Approx(-5.0));
  CHECK(parse_expr("12 / 4 / 3").eval(0.0) == doctest::Approx(1.0));
  CHECK(parse_expr("-t^2").eval(3.0) == doctest::Approx(-9.0));
  CHECK(parse_expr("(-t)^2").eval(3.0) == doctest::Approx(9.0));
  CHECK(parse_expr("2*pi").eval(0.0) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(parse_expr("sin(pi/2)").eval(0.0) == doctest::Approx(1.0));
  CHECK(parse_expr("cos(0)").eval(123.0) == doctest::Approx(1.0));
  CHECK(parse_expr("exp(1)").eval(0.0) == doctest::Approx(std::exp(1.0)));
  CHECK(parse_expr("1 + 0.1*(sin(t) + sin(pi*t))").eval(0.5) ==
        doctest::Approx(1.0 + 0.1 * (std::sin(0.5) + std::sin(std::numbers::pi * 0.5))));
}

TEST_CASE("powers bind tighter than unary minus and multiplication") {
  CHECK(parse_expr("2*t^3").eval(2.0) == doctest::Approx(16.0));
  CHECK_THROWS_AS(parse_expr("t^2^1"), ExprError);  // no chained exponents
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_expr(""), ExprError);
  CHECK_THROWS_AS(parse_expr("1 +"), ExprError);
  CHECK_THROWS_AS(parse_expr("sin()"), ExprError);
  CHECK_THROWS_AS(parse_expr("(1 + 2"), ExprError);
  CHECK_THROWS_AS(parse_expr("1 2"), ExprError);
  CHECK_THROWS_AS(parse_expr("foo(t)"), ExprError);
  CHECK_THROWS_AS(parse_expr("t^1.5"), ExprError);  // integer exponents only
  try {
    parse_expr("1 + * 2");
    FAIL("expected ExprError");
  } catch (const ExprError& e) {
    CHECK(e.position() >= 4);
  }
}

TEST_CASE("evaluation guards") {
  CHECK_THROWS_AS(parse_expr("1 / (t - 1)").eval(1.0), EvalError);
  CHECK_THROWS_AS(parse_expr("exp(t)^100").eval(100.0), EvalError);  // overflow to inf
  CHECK(parse_expr("1 / (t - 1)").eval(2.0) == doctest::Approx(1.0));
}

TEST_CASE("printer round-trips") {
  const char* cases[] = {
      "-3 + 0.1*sin(5*t)", "exp(-t)", "t^3 - 2/(t + 10)",
      "1 + 0.1*(sin(t) + sin(pi*t))", "-(t + 1)*cos(2*t)",
  };
  for (const char* text : cases) {
    const TimeExpr original = parse_expr(text);
    const TimeExpr reparsed = parse_expr(original.str());
    for (double t : {0.0, 0.31, 1.7, 4.0, 19.9}) {
      CHECK(original.eval(t) == reparsed.eval(t));
    }
  }
}

TEST_CASE("time-varying matrix evaluation and spectral norm") {
  TimeVaryingMatrix A = TimeVaryingMatrix::zero(2);
  A.entry(0, 1) = parse_expr("1");
  A.entry(1, 0) = parse_expr("-1");
  const Eigen::MatrixXd M = A.eval(0.7);
  CHECK(M(0, 1) == 1.0);
  CHECK(M(1, 0) == -1.0);
  CHECK(M(0, 0) == 0.0);
  CHECK(A.norm_at(0.7) == doctest::Approx(1.0));

  TimeVaryingMatrix D = TimeVaryingMatrix::diagonal(parse_expr("t"), 3);
  CHECK(D.norm_at(2.0) == doctest::Approx(2.0));
  CHECK(D.eval(2.0)(1, 1) == doctest::Approx(2.0));
}
