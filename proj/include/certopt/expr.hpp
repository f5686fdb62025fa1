#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "certopt/box.hpp"
#include "certopt/interval.hpp"

namespace certopt {

enum class UnaryOp { Neg, Sqr, Sqrt, Exp, Log, Sin, Cos };
enum class BinaryOp { Add, Sub, Mul, Div };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Constant, Variable, Unary, Binary, PowInt };
  Kind kind;
  double value = 0.0;  // Constant
  int var = -1;        // Variable
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  int exponent = 0;  // PowInt
  ExprNodePtr lhs;
  ExprNodePtr rhs;
};

/// Immutable expression tree with value semantics. Subtrees are shared
/// freely; evaluation never mutates a node.
class Expr {
 public:
  Expr() = default;

  static Expr constant(double v);
  static Expr variable(int index);
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr pow(Expr base, int exponent);

  bool valid() const { return node_ != nullptr; }
  const ExprNode& node() const { return *node_; }

  /// Largest variable index referenced, or -1 for constant expressions.
  int max_var_index() const;

  /// Parenthesized infix form accepted back by the parser.
  std::string to_text(const std::vector<std::string>& names = {}) const;

 private:
  explicit Expr(ExprNodePtr node) : node_(std::move(node)) {}
  ExprNodePtr node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr sqr(const Expr& a);
Expr sqrt(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);

/// Structural equality (same shape, ops, indices and constants).
bool expr_equal(const Expr& a, const Expr& b);

/// Plain floating-point evaluation. Domain failures (sqrt/log of a negative,
/// division by zero) surface as NaN.
double eval_point(const Expr& e, const Eigen::VectorXd& x);

/// Natural interval extension: the result contains the exact range of e
/// over b. EMPTY when a subexpression is fully out of domain over b.
Interval eval_interval(const Expr& e, const Box& b);

struct PointEval {
  double value;
  Eigen::VectorXd gradient;
};

/// Forward-mode value-and-gradient at a point (exact up to rounding).
/// Domain failures propagate as NaN entries.
PointEval eval_with_gradient(const Expr& e, const Eigen::VectorXd& x);

struct IntervalEval {
  Interval value;
  std::vector<Interval> gradient;
};

/// Forward-mode interval value and gradient over a box.
IntervalEval eval_with_gradient(const Expr& e, const Box& b);

/// Row i, column j holds d(exprs[i])/dx_j at x.
Eigen::MatrixXd jacobian_point(const std::vector<Expr>& exprs, const Eigen::VectorXd& x);

/// Entry (i, j) encloses the range of d(exprs[i])/dx_j over b.
std::vector<std::vector<Interval>> jacobian_interval(const std::vector<Expr>& exprs, const Box& b);

}  // namespace certopt
