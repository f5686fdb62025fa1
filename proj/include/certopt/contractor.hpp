#pragma once

#include "certopt/box.hpp"
#include "certopt/expr.hpp"
#include "certopt/problem.hpp"

namespace certopt {

enum class Relation { EqZero, LeZero };

/// One HC4 revise pass for `e rel 0` over b: forward interval evaluation
/// caches node ranges, the backward phase projects the relation onto each
/// variable through inverse operations. Returns a sub-box of b containing
/// every point of b that satisfies the constraint; EMPTY when the
/// constraint is proven unsatisfiable over b.
Box hc4_revise(const Expr& e, Relation rel, const Box& b);

/// hc4_revise against an arbitrary target interval for the expression value.
Box hc4_revise_target(const Expr& e, const Interval& target, const Box& b);

/// Fixpoint sweeps of hc4_revise over all constraints plus the objective
/// cut f(x) <= upper_bound; stops when a full sweep shrinks every dimension
/// by less than 1%, after at most 20 sweeps, or on EMPTY.
Box prune(const Problem& p, const Box& b, double upper_bound);

}  // namespace certopt
