#include "certopt/contractor.hpp"

#include <cmath>
#include <unordered_map>

namespace certopt {

namespace {

using Cache = std::unordered_map<const ExprNode*, Interval>;

Interval forward(const ExprNode& n, const std::vector<Interval>& domains, Cache& cache) {
  auto it = cache.find(&n);
  if (it != cache.end()) return it->second;
  Interval v;
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      v = Interval(n.value, n.value);
      break;
    case ExprNode::Kind::Variable:
      v = domains[static_cast<std::size_t>(n.var)];
      break;
    case ExprNode::Kind::Unary: {
      Interval c = forward(*n.lhs, domains, cache);
      switch (n.uop) {
        case UnaryOp::Neg:
          v = -c;
          break;
        case UnaryOp::Sqr:
          v = sqr(c);
          break;
        case UnaryOp::Sqrt:
          v = sqrt(c);
          break;
        case UnaryOp::Exp:
          v = exp(c);
          break;
        case UnaryOp::Log:
          v = log(c);
          break;
        case UnaryOp::Sin:
          v = sin(c);
          break;
        case UnaryOp::Cos:
          v = cos(c);
          break;
      }
      break;
    }
    case ExprNode::Kind::Binary: {
      Interval a = forward(*n.lhs, domains, cache);
      Interval b = forward(*n.rhs, domains, cache);
      switch (n.bop) {
        case BinaryOp::Add:
          v = a + b;
          break;
        case BinaryOp::Sub:
          v = a - b;
          break;
        case BinaryOp::Mul:
          v = a * b;
          break;
        case BinaryOp::Div:
          v = a / b;
          break;
      }
      break;
    }
    case ExprNode::Kind::PowInt:
      v = pow_int(forward(*n.lhs, domains, cache), n.exponent);
      break;
  }
  cache.emplace(&n, v);
  return v;
}

// Rigorous enclosure of x^(1/p) for x >= 0, p >= 1; verified against the
// interval power so libm inaccuracy in std::pow cannot break containment.
double nth_root_down(double x, int p) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return kInf;
  double r = std::pow(x, 1.0 / p);
  for (int i = 0; i < 4; ++i) r = rounding::next_down(r);
  for (int i = 0; i < 64 && r > 0 && pow_int(Interval(r, r), p).lo() > x; ++i) {
    r = rounding::next_down(r);
  }
  return std::max(r, 0.0);
}

double nth_root_up(double x, int p) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return kInf;
  double r = std::pow(x, 1.0 / p);
  for (int i = 0; i < 4; ++i) r = rounding::next_up(r);
  for (int i = 0; i < 64 && pow_int(Interval(r, r), p).hi() < x; ++i) {
    r = rounding::next_up(r);
  }
  return r;
}

// Enclosure of the p-th root of t (p >= 1 odd), sign-preserving.
Interval odd_root(const Interval& t, int p) {
  if (t.is_empty()) return t;
  double lo = t.lo() >= 0.0 ? nth_root_down(t.lo(), p) : -nth_root_up(-t.lo(), p);
  double hi = t.hi() >= 0.0 ? nth_root_up(t.hi(), p) : -nth_root_down(-t.hi(), p);
  return Interval(lo, hi);
}

class Hc4Pass {
 public:
  Hc4Pass(const Box& b) : domains_(b.components()) {}

  bool run(const ExprNode& root, const Interval& target) {
    Interval range = forward(root, domains_, cache_);
    Interval t = range.intersect(target);
    if (t.is_empty()) return false;
    backward(root, t);
    return !empty_;
  }

  Box result() const { return Box(domains_); }

 private:
  Interval cached(const ExprNode& n) const { return cache_.at(&n); }

  void backward(const ExprNode& n, const Interval& target) {
    if (empty_) return;
    switch (n.kind) {
      case ExprNode::Kind::Constant:
        return;
      case ExprNode::Kind::Variable: {
        auto i = static_cast<std::size_t>(n.var);
        domains_[i] = domains_[i].intersect(target);
        if (domains_[i].is_empty()) empty_ = true;
        return;
      }
      case ExprNode::Kind::Unary: {
        const Interval c = cached(*n.lhs);
        Interval child_target;
        switch (n.uop) {
          case UnaryOp::Neg:
            child_target = (-target).intersect(c);
            break;
          case UnaryOp::Sqr:
            child_target = even_preimage(target, c, 2);
            break;
          case UnaryOp::Sqrt:
            child_target = sqr(target.intersect(Interval(0.0, kInf))).intersect(c);
            break;
          case UnaryOp::Exp:
            child_target = log(target.intersect(Interval(0.0, kInf))).intersect(c);
            break;
          case UnaryOp::Log:
            child_target = exp(target).intersect(c);
            break;
          case UnaryOp::Sin:
          case UnaryOp::Cos:
            // Periodic inverses are multi-branch; fall back to no narrowing.
            return;
        }
        if (child_target.is_empty()) {
          empty_ = true;
          return;
        }
        backward(*n.lhs, child_target);
        return;
      }
      case ExprNode::Kind::Binary: {
        const Interval a = cached(*n.lhs);
        const Interval b = cached(*n.rhs);
        Interval ta, tb;
        switch (n.bop) {
          case BinaryOp::Add:
            ta = (target - b).intersect(a);
            tb = (target - a).intersect(b);
            break;
          case BinaryOp::Sub:
            ta = (target + b).intersect(a);
            tb = (a - target).intersect(b);
            break;
          case BinaryOp::Mul:
            ta = (target / b).intersect(a);
            tb = (target / a).intersect(b);
            break;
          case BinaryOp::Div:
            ta = (target * b).intersect(a);
            tb = (a / target).intersect(b);
            break;
        }
        if (ta.is_empty() || tb.is_empty()) {
          empty_ = true;
          return;
        }
        backward(*n.lhs, ta);
        backward(*n.rhs, tb);
        return;
      }
      case ExprNode::Kind::PowInt: {
        const Interval c = cached(*n.lhs);
        int p = n.exponent;
        if (p == 0) return;
        Interval t = target;
        if (p < 0) {
          t = Interval(1.0, 1.0) / t;  // x^p = v  <=>  x^(-p) = 1/v (v != 0)
          p = -p;
        }
        Interval child_target =
            (p % 2 == 0) ? even_preimage(t, c, p) : odd_root(t, p).intersect(c);
        if (child_target.is_empty()) {
          empty_ = true;
          return;
        }
        backward(*n.lhs, child_target);
        return;
      }
    }
  }

  // Preimage of target under x^p for even p, intersected with the child
  // range branch-wise before hulling, so a one-signed child keeps the
  // matching branch only (sqr^-1([4,4]) over [0,10] -> [2,2]).
  static Interval even_preimage(const Interval& target, const Interval& child, int p) {
    Interval t = target.intersect(Interval(0.0, kInf));
    if (t.is_empty()) return Interval::empty();
    double rlo = p == 2 ? rounding::sqrt_down(t.lo()) : nth_root_down(t.lo(), p);
    double rhi = p == 2 ? (std::isinf(t.hi()) ? kInf : rounding::sqrt_up(t.hi()))
                        : nth_root_up(t.hi(), p);
    if (t.lo() <= 0.0) rlo = 0.0;
    Interval pos(rlo, rhi);
    Interval neg(-rhi, -rlo);
    return pos.intersect(child).hull(neg.intersect(child));
  }

  std::vector<Interval> domains_;
  Cache cache_;
  bool empty_ = false;
};

}  // namespace

Box hc4_revise_target(const Expr& e, const Interval& target, const Box& b) {
  if (b.is_empty()) return b;
  Hc4Pass pass(b);
  if (!pass.run(e.node(), target)) return Box::empty_box(b.size());
  return pass.result();
}

Box hc4_revise(const Expr& e, Relation rel, const Box& b) {
  Interval target = rel == Relation::EqZero ? Interval(0.0, 0.0) : Interval(-kInf, 0.0);
  return hc4_revise_target(e, target, b);
}

Box prune(const Problem& p, const Box& b, double upper_bound) {
  Box cur = b;
  if (cur.is_empty()) return cur;
  for (int sweep = 0; sweep < 20; ++sweep) {
    Box before = cur;
    for (const auto& g : p.equalities) {
      cur = hc4_revise(g, Relation::EqZero, cur);
      if (cur.is_empty()) return cur;
    }
    for (const auto& h : p.inequalities) {
      cur = hc4_revise(h, Relation::LeZero, cur);
      if (cur.is_empty()) return cur;
    }
    if (upper_bound < kInf) {
      cur = hc4_revise_target(p.objective, Interval(-kInf, upper_bound), cur);
      if (cur.is_empty()) return cur;
    }
    bool significant = false;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      double wb = before[i].width();
      double wa = cur[i].width();
      if (std::isinf(wb)) {
        if (!std::isinf(wa)) significant = true;
      } else if (wb - wa > 0.01 * wb) {
        significant = true;
      }
    }
    if (!significant) break;
  }
  return cur;
}

}  // namespace certopt
