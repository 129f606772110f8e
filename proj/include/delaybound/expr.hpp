#pragma once

// Closed-form time-varying coefficients: a small expression language over the
// time variable t with sin, cos, exp, integer powers and the constant pi.
// Expressions are immutable after parsing and safe to evaluate concurrently.

#include <Eigen/Core>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace delaybound {

class ExprError : public std::runtime_error {
 public:
  ExprError(std::string message, std::size_t position)
      : std::runtime_error(std::move(message)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
struct ExprNode;
}

/// Parsed closed-form function of time. Evaluation is pure and deterministic:
/// equal t values give bit-identical results.
class TimeExpr {
 public:
  TimeExpr() = default;

  static TimeExpr constant(double value);

  bool valid() const { return root_ != nullptr; }

  /// Recursive evaluation at time t. Throws EvalError on division by a value
  /// with magnitude below 1e-12 or on overflow to a non-finite result.
  double eval(double t) const;

  /// Prints a fully parenthesized form that re-parses to an expression with
  /// identical evaluation.
  std::string str() const;

 private:
  friend TimeExpr parse_expr(std::string_view);
  friend class ExprBuilder;
  explicit TimeExpr(std::shared_ptr<const detail::ExprNode> root)
      : root_(std::move(root)) {}
  std::shared_ptr<const detail::ExprNode> root_;
};

/// Parses the expression grammar (standard precedence, parentheses, unary
/// minus, ^ for integer powers). Throws ExprError with the offending position.
TimeExpr parse_expr(std::string_view text);

/// n-by-n grid of TimeExpr entries defining a matrix-valued function A(t).
class TimeVaryingMatrix {
 public:
  TimeVaryingMatrix() = default;
  TimeVaryingMatrix(int n, std::vector<TimeExpr> row_major_entries);

  static TimeVaryingMatrix zero(int n);
  static TimeVaryingMatrix diagonal(const TimeExpr& d, int n);

  int dim() const { return n_; }
  const TimeExpr& entry(int row, int col) const;
  TimeExpr& entry(int row, int col);

  Eigen::MatrixXd eval(double t) const;
  void eval_into(double t, Eigen::MatrixXd& out) const;

  /// Spectral norm of the evaluated matrix at time t.
  double norm_at(double t) const;

 private:
  int n_ = 0;
  std::vector<TimeExpr> entries_;
};

}  // namespace delaybound
