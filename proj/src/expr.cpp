#include "certopt/expr.hpp"

#include <cmath>
#include <sstream>

namespace certopt {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

ExprNodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

}  // namespace

Expr Expr::constant(double v) {
  ExprNode n;
  n.kind = ExprNode::Kind::Constant;
  n.value = v;
  return Expr(make_node(std::move(n)));
}

Expr Expr::variable(int index) {
  ExprNode n;
  n.kind = ExprNode::Kind::Variable;
  n.var = index;
  return Expr(make_node(std::move(n)));
}

Expr Expr::unary(UnaryOp op, Expr child) {
  ExprNode n;
  n.kind = ExprNode::Kind::Unary;
  n.uop = op;
  n.lhs = child.node_;
  return Expr(make_node(std::move(n)));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  ExprNode n;
  n.kind = ExprNode::Kind::Binary;
  n.bop = op;
  n.lhs = lhs.node_;
  n.rhs = rhs.node_;
  return Expr(make_node(std::move(n)));
}

Expr Expr::pow(Expr base, int exponent) {
  ExprNode n;
  n.kind = ExprNode::Kind::PowInt;
  n.exponent = exponent;
  n.lhs = base.node_;
  return Expr(make_node(std::move(n)));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(UnaryOp::Neg, a); }
Expr sqr(const Expr& a) { return Expr::unary(UnaryOp::Sqr, a); }
Expr sqrt(const Expr& a) { return Expr::unary(UnaryOp::Sqrt, a); }
Expr exp(const Expr& a) { return Expr::unary(UnaryOp::Exp, a); }
Expr log(const Expr& a) { return Expr::unary(UnaryOp::Log, a); }
Expr sin(const Expr& a) { return Expr::unary(UnaryOp::Sin, a); }
Expr cos(const Expr& a) { return Expr::unary(UnaryOp::Cos, a); }

namespace {

int max_var_rec(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      return -1;
    case ExprNode::Kind::Variable:
      return n.var;
    case ExprNode::Kind::Unary:
    case ExprNode::Kind::PowInt:
      return max_var_rec(*n.lhs);
    case ExprNode::Kind::Binary:
      return std::max(max_var_rec(*n.lhs), max_var_rec(*n.rhs));
  }
  return -1;
}

}  // namespace

int Expr::max_var_index() const { return node_ ? max_var_rec(*node_) : -1; }

namespace {

bool node_equal(const ExprNode* p, const ExprNode* q) {
  if (p == q) return true;
  if (!p || !q || p->kind != q->kind) return false;
  switch (p->kind) {
    case ExprNode::Kind::Constant:
      return p->value == q->value;
    case ExprNode::Kind::Variable:
      return p->var == q->var;
    case ExprNode::Kind::Unary:
      return p->uop == q->uop && node_equal(p->lhs.get(), q->lhs.get());
    case ExprNode::Kind::Binary:
      return p->bop == q->bop && node_equal(p->lhs.get(), q->lhs.get()) &&
             node_equal(p->rhs.get(), q->rhs.get());
    case ExprNode::Kind::PowInt:
      return p->exponent == q->exponent && node_equal(p->lhs.get(), q->lhs.get());
  }
  return false;
}

}  // namespace

bool expr_equal(const Expr& a, const Expr& b) { return node_equal(&a.node(), &b.node()); }

namespace {

double eval_point_rec(const ExprNode& n, const Eigen::VectorXd& x) {
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      return n.value;
    case ExprNode::Kind::Variable:
      return x[n.var];
    case ExprNode::Kind::Unary: {
      double v = eval_point_rec(*n.lhs, x);
      switch (n.uop) {
        case UnaryOp::Neg:
          return -v;
        case UnaryOp::Sqr:
          return v * v;
        case UnaryOp::Sqrt:
          return v < 0.0 ? kNaN : std::sqrt(v);
        case UnaryOp::Exp:
          return std::exp(v);
        case UnaryOp::Log:
          return v <= 0.0 ? kNaN : std::log(v);
        case UnaryOp::Sin:
          return std::sin(v);
        case UnaryOp::Cos:
          return std::cos(v);
      }
      return kNaN;
    }
    case ExprNode::Kind::Binary: {
      double a = eval_point_rec(*n.lhs, x);
      double b = eval_point_rec(*n.rhs, x);
      switch (n.bop) {
        case BinaryOp::Add:
          return a + b;
        case BinaryOp::Sub:
          return a - b;
        case BinaryOp::Mul:
          return a * b;
        case BinaryOp::Div:
          return b == 0.0 ? kNaN : a / b;
      }
      return kNaN;
    }
    case ExprNode::Kind::PowInt: {
      double v = eval_point_rec(*n.lhs, x);
      if (n.exponent == 0) return 1.0;
      if (v == 0.0 && n.exponent < 0) return kNaN;
      double r = std::pow(v, n.exponent);
      return r;
    }
  }
  return kNaN;
}

Interval eval_interval_rec(const ExprNode& n, const Box& b) {
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      return Interval(n.value, n.value);
    case ExprNode::Kind::Variable:
      return b[static_cast<std::size_t>(n.var)];
    case ExprNode::Kind::Unary: {
      Interval v = eval_interval_rec(*n.lhs, b);
      switch (n.uop) {
        case UnaryOp::Neg:
          return -v;
        case UnaryOp::Sqr:
          return sqr(v);
        case UnaryOp::Sqrt:
          return sqrt(v);
        case UnaryOp::Exp:
          return exp(v);
        case UnaryOp::Log:
          return log(v);
        case UnaryOp::Sin:
          return sin(v);
        case UnaryOp::Cos:
          return cos(v);
      }
      return Interval::empty();
    }
    case ExprNode::Kind::Binary: {
      Interval a = eval_interval_rec(*n.lhs, b);
      Interval c = eval_interval_rec(*n.rhs, b);
      switch (n.bop) {
        case BinaryOp::Add:
          return a + c;
        case BinaryOp::Sub:
          return a - c;
        case BinaryOp::Mul:
          return a * c;
        case BinaryOp::Div:
          return a / c;
      }
      return Interval::empty();
    }
    case ExprNode::Kind::PowInt:
      return pow_int(eval_interval_rec(*n.lhs, b), n.exponent);
  }
  return Interval::empty();
}

struct Dual {
  double value;
  Eigen::VectorXd grad;
};

Dual eval_dual_rec(const ExprNode& n, const Eigen::VectorXd& x) {
  const auto dim = x.size();
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      return {n.value, Eigen::VectorXd::Zero(dim)};
    case ExprNode::Kind::Variable: {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
      g[n.var] = 1.0;
      return {x[n.var], std::move(g)};
    }
    case ExprNode::Kind::Unary: {
      Dual c = eval_dual_rec(*n.lhs, x);
      switch (n.uop) {
        case UnaryOp::Neg:
          return {-c.value, -c.grad};
        case UnaryOp::Sqr:
          return {c.value * c.value, 2.0 * c.value * c.grad};
        case UnaryOp::Sqrt: {
          if (c.value < 0.0) return {kNaN, Eigen::VectorXd::Constant(dim, kNaN)};
          double s = std::sqrt(c.value);
          double d = s == 0.0 ? kNaN : 0.5 / s;
          return {s, d * c.grad};
        }
        case UnaryOp::Exp: {
          double v = std::exp(c.value);
          return {v, v * c.grad};
        }
        case UnaryOp::Log: {
          if (c.value <= 0.0) return {kNaN, Eigen::VectorXd::Constant(dim, kNaN)};
          return {std::log(c.value), (1.0 / c.value) * c.grad};
        }
        case UnaryOp::Sin:
          return {std::sin(c.value), std::cos(c.value) * c.grad};
        case UnaryOp::Cos:
          return {std::cos(c.value), -std::sin(c.value) * c.grad};
      }
      return {kNaN, Eigen::VectorXd::Constant(dim, kNaN)};
    }
    case ExprNode::Kind::Binary: {
      Dual a = eval_dual_rec(*n.lhs, x);
      Dual b = eval_dual_rec(*n.rhs, x);
      switch (n.bop) {
        case BinaryOp::Add:
          return {a.value + b.value, a.grad + b.grad};
        case BinaryOp::Sub:
          return {a.value - b.value, a.grad - b.grad};
        case BinaryOp::Mul:
          return {a.value * b.value, b.value * a.grad + a.value * b.grad};
        case BinaryOp::Div: {
          if (b.value == 0.0) return {kNaN, Eigen::VectorXd::Constant(dim, kNaN)};
          double q = a.value / b.value;
          return {q, (a.grad - q * b.grad) / b.value};
        }
      }
      return {kNaN, Eigen::VectorXd::Constant(dim, kNaN)};
    }
    case ExprNode::Kind::PowInt: {
      Dual c = eval_dual_rec(*n.lhs, x);
      int p = n.exponent;
      if (p == 0) return {1.0, Eigen::VectorXd::Zero(dim)};
      if (c.value == 0.0 && p < 0) return {kNaN, Eigen::VectorXd::Constant(dim, kNaN)};
      double v = std::pow(c.value, p);
      double d = p * std::pow(c.value, p - 1);
      return {v, d * c.grad};
    }
  }
  return {kNaN, Eigen::VectorXd::Constant(dim, kNaN)};
}

struct IDual {
  Interval value;
  std::vector<Interval> grad;
};

IDual idual_empty(std::size_t dim) {
  return {Interval::empty(), std::vector<Interval>(dim, Interval::empty())};
}

IDual eval_idual_rec(const ExprNode& n, const Box& b) {
  const std::size_t dim = b.size();
  switch (n.kind) {
    case ExprNode::Kind::Constant: {
      IDual r{Interval(n.value, n.value), std::vector<Interval>(dim, Interval(0.0, 0.0))};
      return r;
    }
    case ExprNode::Kind::Variable: {
      IDual r{b[static_cast<std::size_t>(n.var)], std::vector<Interval>(dim, Interval(0.0, 0.0))};
      r.grad[static_cast<std::size_t>(n.var)] = Interval(1.0, 1.0);
      return r;
    }
    case ExprNode::Kind::Unary: {
      IDual c = eval_idual_rec(*n.lhs, b);
      if (c.value.is_empty()) return idual_empty(dim);
      IDual r;
      r.grad.resize(dim);
      Interval d;  // chain-rule factor
      switch (n.uop) {
        case UnaryOp::Neg:
          r.value = -c.value;
          d = Interval(-1.0, -1.0);
          break;
        case UnaryOp::Sqr:
          r.value = sqr(c.value);
          d = Interval(2.0, 2.0) * c.value;
          break;
        case UnaryOp::Sqrt:
          r.value = sqrt(c.value);
          d = Interval(0.5, 0.5) / r.value;
          break;
        case UnaryOp::Exp:
          r.value = exp(c.value);
          d = r.value;
          break;
        case UnaryOp::Log:
          r.value = log(c.value);
          d = Interval(1.0, 1.0) / c.value.intersect(Interval(0.0, kInf));
          break;
        case UnaryOp::Sin:
          r.value = sin(c.value);
          d = cos(c.value);
          break;
        case UnaryOp::Cos:
          r.value = cos(c.value);
          d = -sin(c.value);
          break;
      }
      if (r.value.is_empty()) return idual_empty(dim);
      for (std::size_t i = 0; i < dim; ++i) r.grad[i] = d * c.grad[i];
      return r;
    }
    case ExprNode::Kind::Binary: {
      IDual a = eval_idual_rec(*n.lhs, b);
      IDual c = eval_idual_rec(*n.rhs, b);
      if (a.value.is_empty() || c.value.is_empty()) return idual_empty(dim);
      IDual r;
      r.grad.resize(dim);
      switch (n.bop) {
        case BinaryOp::Add:
          r.value = a.value + c.value;
          for (std::size_t i = 0; i < dim; ++i) r.grad[i] = a.grad[i] + c.grad[i];
          break;
        case BinaryOp::Sub:
          r.value = a.value - c.value;
          for (std::size_t i = 0; i < dim; ++i) r.grad[i] = a.grad[i] - c.grad[i];
          break;
        case BinaryOp::Mul:
          r.value = a.value * c.value;
          for (std::size_t i = 0; i < dim; ++i)
            r.grad[i] = a.grad[i] * c.value + a.value * c.grad[i];
          break;
        case BinaryOp::Div: {
          r.value = a.value / c.value;
          Interval den = sqr(c.value);
          for (std::size_t i = 0; i < dim; ++i)
            r.grad[i] = (a.grad[i] * c.value - a.value * c.grad[i]) / den;
          break;
        }
      }
      if (r.value.is_empty()) return idual_empty(dim);
      return r;
    }
    case ExprNode::Kind::PowInt: {
      IDual c = eval_idual_rec(*n.lhs, b);
      if (c.value.is_empty()) return idual_empty(dim);
      int p = n.exponent;
      IDual r;
      r.grad.resize(dim);
      r.value = pow_int(c.value, p);
      if (p == 0) {
        for (std::size_t i = 0; i < dim; ++i) r.grad[i] = Interval(0.0, 0.0);
        return r;
      }
      Interval d = Interval(static_cast<double>(p), static_cast<double>(p)) * pow_int(c.value, p - 1);
      if (r.value.is_empty()) return idual_empty(dim);
      for (std::size_t i = 0; i < dim; ++i) r.grad[i] = d * c.grad[i];
      return r;
    }
  }
  return idual_empty(dim);
}

}  // namespace

double eval_point(const Expr& e, const Eigen::VectorXd& x) { return eval_point_rec(e.node(), x); }

Interval eval_interval(const Expr& e, const Box& b) {
  if (b.is_empty()) return Interval::empty();
  return eval_interval_rec(e.node(), b);
}

PointEval eval_with_gradient(const Expr& e, const Eigen::VectorXd& x) {
  Dual d = eval_dual_rec(e.node(), x);
  return {d.value, std::move(d.grad)};
}

IntervalEval eval_with_gradient(const Expr& e, const Box& b) {
  IDual d = eval_idual_rec(e.node(), b);
  return {d.value, std::move(d.grad)};
}

Eigen::MatrixXd jacobian_point(const std::vector<Expr>& exprs, const Eigen::VectorXd& x) {
  Eigen::MatrixXd J(static_cast<Eigen::Index>(exprs.size()), x.size());
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    J.row(static_cast<Eigen::Index>(i)) = eval_with_gradient(exprs[i], x).gradient.transpose();
  }
  return J;
}

std::vector<std::vector<Interval>> jacobian_interval(const std::vector<Expr>& exprs, const Box& b) {
  std::vector<std::vector<Interval>> J(exprs.size());
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    J[i] = eval_with_gradient(exprs[i], b).gradient;
  }
  return J;
}

namespace {

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Binary:
      return (n.bop == BinaryOp::Add || n.bop == BinaryOp::Sub) ? 1 : 2;
    case ExprNode::Kind::Unary:
      return n.uop == UnaryOp::Neg ? 3 : 5;
    case ExprNode::Kind::PowInt:
      return 4;
    default:
      return 5;
  }
}

void print_rec(std::ostringstream& os, const ExprNode& n, const std::vector<std::string>& names,
               int parent_prec) {
  int prec = precedence(n);
  bool paren = prec < parent_prec;
  if (paren) os << '(';
  switch (n.kind) {
    case ExprNode::Kind::Constant: {
      if (n.value < 0) {
        os << '(' << n.value << ')';
      } else {
        os << n.value;
      }
      break;
    }
    case ExprNode::Kind::Variable:
      if (static_cast<std::size_t>(n.var) < names.size()) {
        os << names[static_cast<std::size_t>(n.var)];
      } else {
        os << "x" << n.var;
      }
      break;
    case ExprNode::Kind::Unary: {
      const char* f = nullptr;
      switch (n.uop) {
        case UnaryOp::Neg:
          os << '-';
          print_rec(os, *n.lhs, names, 4);
          if (paren) os << ')';
          return;
        case UnaryOp::Sqr:
          f = "sqr";
          break;
        case UnaryOp::Sqrt:
          f = "sqrt";
          break;
        case UnaryOp::Exp:
          f = "exp";
          break;
        case UnaryOp::Log:
          f = "log";
          break;
        case UnaryOp::Sin:
          f = "sin";
          break;
        case UnaryOp::Cos:
          f = "cos";
          break;
      }
      os << f << '(';
      print_rec(os, *n.lhs, names, 0);
      os << ')';
      break;
    }
    case ExprNode::Kind::Binary: {
      print_rec(os, *n.lhs, names, prec);
      switch (n.bop) {
        case BinaryOp::Add:
          os << " + ";
          break;
        case BinaryOp::Sub:
          os << " - ";
          break;
        case BinaryOp::Mul:
          os << " * ";
          break;
        case BinaryOp::Div:
          os << " / ";
          break;
      }
      print_rec(os, *n.rhs, names, prec + 1);
      break;
    }
    case ExprNode::Kind::PowInt:
      print_rec(os, *n.lhs, names, prec + 1);
      os << '^' << n.exponent;
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string Expr::to_text(const std::vector<std::string>& names) const {
  std::ostringstream os;
  os.precision(17);
  print_rec(os, *node_, names, 0);
  return os.str();
}

}  // namespace certopt
