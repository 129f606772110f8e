#include "delaybound/expr.hpp"

#include <Eigen/SVD>
#include <cctype>
#include <cmath>
#include <numbers>

namespace delaybound {

namespace detail {

enum class NodeKind {
  Literal,
  Time,
  Pi,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Sin,
  Cos,
  Exp,
  Pow,
};

struct ExprNode {
  NodeKind kind;
  double value = 0.0;   // Literal
  int exponent = 0;     // Pow
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(NodeKind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

double eval_node(const ExprNode& node, double t) {
  switch (node.kind) {
    case NodeKind::Literal:
      return node.value;
    case NodeKind::Time:
      return t;
    case NodeKind::Pi:
      return std::numbers::pi;
    case NodeKind::Neg:
      return -eval_node(*node.lhs, t);
    case NodeKind::Add:
      return eval_node(*node.lhs, t) + eval_node(*node.rhs, t);
    case NodeKind::Sub:
      return eval_node(*node.lhs, t) - eval_node(*node.rhs, t);
    case NodeKind::Mul:
      return eval_node(*node.lhs, t) * eval_node(*node.rhs, t);
    case NodeKind::Div: {
      const double den = eval_node(*node.rhs, t);
      if (std::abs(den) < 1e-12) {
        throw EvalError("division by near-zero denominator");
      }
      return eval_node(*node.lhs, t) / den;
    }
    case NodeKind::Sin:
      return std::sin(eval_node(*node.lhs, t));
    case NodeKind::Cos:
      return std::cos(eval_node(*node.lhs, t));
    case NodeKind::Exp:
      return std::exp(eval_node(*node.lhs, t));
    case NodeKind::Pow: {
      const double base = eval_node(*node.lhs, t);
      double out = 1.0;
      for (int i = 0; i < node.exponent; ++i) out *= base;
      return out;
    }
  }
  throw EvalError("corrupt expression node");
}

void print_node(const ExprNode& node, std::string& out) {
  switch (node.kind) {
    case NodeKind::Literal: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", node.value);
      out += buf;
      return;
    }
    case NodeKind::Time:
      out += 't';
      return;
    case NodeKind::Pi:
      out += "pi";
      return;
    case NodeKind::Neg:
      out += "(-";
      print_node(*node.lhs, out);
      out += ')';
      return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      const char op = node.kind == NodeKind::Add   ? '+'
                      : node.kind == NodeKind::Sub ? '-'
                      : node.kind == NodeKind::Mul ? '*'
                                                   : '/';
      out += '(';
      print_node(*node.lhs, out);
      out += op;
      print_node(*node.rhs, out);
      out += ')';
      return;
    }
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Exp:
      out += node.kind == NodeKind::Sin   ? "sin("
             : node.kind == NodeKind::Cos ? "cos("
                                          : "exp(";
      print_node(*node.lhs, out);
      out += ')';
      return;
    case NodeKind::Pow:
      out += '(';
      print_node(*node.lhs, out);
      out += '^';
      out += std::to_string(node.exponent);
      out += ')';
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ExprError("empty expression", 0);
    }
    NodePtr root = parse_sum();
    skip_ws();
    if (pos_ < text_.size()) {
      throw ExprError("unexpected trailing input", pos_);
    }
    return root;
  }

 private:
  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      skip_ws();
      if (consume('+')) {
        lhs = make(NodeKind::Add, lhs, parse_product());
      } else if (consume('-')) {
        lhs = make(NodeKind::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        lhs = make(NodeKind::Mul, lhs, parse_unary());
      } else if (consume('/')) {
        lhs = make(NodeKind::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (consume('-')) {
      return make(NodeKind::Neg, parse_unary());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_ws();
    if (!consume('^')) {
      return base;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) {
      throw ExprError("expected integer exponent after '^'", pos_);
    }
    auto node = std::make_shared<ExprNode>();
    node->kind = NodeKind::Pow;
    node->lhs = base;
    node->exponent = std::stoi(std::string(text_.substr(start, pos_ - start)));
    return node;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ExprError("unexpected end of expression", pos_);
    }
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      NodePtr inner = parse_sum();
      skip_ws();
      if (!consume(')')) {
        throw ExprError("unbalanced parenthesis", open);
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return parse_identifier();
    }
    throw ExprError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    std::size_t consumed = 0;
    double value;
    try {
      value = std::stod(std::string(text_.substr(start)), &consumed);
    } catch (const std::exception&) {
      throw ExprError("malformed number", start);
    }
    pos_ = start + consumed;
    auto node = std::make_shared<ExprNode>();
    node->kind = NodeKind::Literal;
    node->value = value;
    return node;
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "t") return make(NodeKind::Time);
    if (name == "pi") return make(NodeKind::Pi);
    NodeKind fn;
    if (name == "sin") {
      fn = NodeKind::Sin;
    } else if (name == "cos") {
      fn = NodeKind::Cos;
    } else if (name == "exp") {
      fn = NodeKind::Exp;
    } else {
      throw ExprError("unknown identifier '" + std::string(name) + "'", start);
    }
    skip_ws();
    if (!consume('(')) {
      throw ExprError("expected '(' after function name", pos_);
    }
    NodePtr arg = parse_sum();
    skip_ws();
    if (!consume(')')) {
      throw ExprError("unbalanced parenthesis in function call", start);
    }
    return make(fn, arg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace
}  // namespace detail

TimeExpr TimeExpr::constant(double value) {
  auto node = std::make_shared<detail::ExprNode>();
  node->kind = detail::NodeKind::Literal;
  node->value = value;
  return TimeExpr(node);
}

double TimeExpr::eval(double t) const {
  if (!root_) {
    throw EvalError("evaluating an empty expression");
  }
  const double result = detail::eval_node(*root_, t);
  if (!std::isfinite(result)) {
    throw EvalError("expression evaluated to a non-finite value");
  }
  return result;
}

std::string TimeExpr::str() const {
  std::string out;
  if (root_) {
    detail::print_node(*root_, out);
  }
  return out;
}

TimeExpr parse_expr(std::string_view text) {
  detail::Parser parser(text);
  return TimeExpr(parser.parse());
}

TimeVaryingMatrix::TimeVaryingMatrix(int n, std::vector<TimeExpr> row_major_entries)
    : n_(n), entries_(std::move(row_major_entries)) {
  if (n_ <= 0 || entries_.size() != static_cast<std::size_t>(n_) * n_) {
    throw std::invalid_argument("TimeVaryingMatrix: entry count must be n*n");
  }
}

TimeVaryingMatrix TimeVaryingMatrix::zero(int n) {
  std::vector<TimeExpr> entries(static_cast<std::size_t>(n) * n, TimeExpr::constant(0.0));
  return TimeVaryingMatrix(n, std::move(entries));
}

TimeVaryingMatrix TimeVaryingMatrix::diagonal(const TimeExpr& d, int n) {
  TimeVaryingMatrix m = zero(n);
  for (int i = 0; i < n; ++i) m.entry(i, i) = d;
  return m;
}

const TimeExpr& TimeVaryingMatrix::entry(int row, int col) const {
  return entries_[static_cast<std::size_t>(row) * n_ + col];
}

TimeExpr& TimeVaryingMatrix::entry(int row, int col) {
  return entries_[static_cast<std::size_t>(row) * n_ + col];
}

Eigen::MatrixXd TimeVaryingMatrix::eval(double t) const {
  Eigen::MatrixXd out(n_, n_);
  eval_into(t, out);
  return out;
}

void TimeVaryingMatrix::eval_into(double t, Eigen::MatrixXd& out) const {
  out.resize(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      out(i, j) = entry(i, j).eval(t);
    }
  }
}

double TimeVaryingMatrix::norm_at(double t) const {
  const Eigen::MatrixXd m = eval(t);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace delaybound
