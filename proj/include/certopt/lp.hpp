#pragma once

#include <Eigen/Core>
#include <vector>

#include "certopt/contractor.hpp"
#include "certopt/interval.hpp"

namespace certopt {

struct LinearRow {
  Eigen::VectorXd coeffs;
  Relation rel = Relation::LeZero;  // LeZero: a.x <= rhs, EqZero: a.x == rhs
  double rhs = 0.0;
};

/// Dense LP in bounded-variable form: minimize objective.x subject to the
/// rows and lower <= x <= upper (all bounds finite).
struct LinearProgram {
  Eigen::VectorXd objective;
  std::vector<LinearRow> rows;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Eigen::Index num_vars() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  Eigen::VectorXd primal;          // per variable
  Eigen::VectorXd duals;           // per row; >= 0 on <= rows, free on == rows
  double objective_value = kInf;   // floating-point, unsafe
};

/// Two-phase dense primal simplex with Bland's anti-cycling rule.
/// Deterministic for identical inputs. The iteration cap
/// 10*(rows+cols)^2 yields NumericalFailure.
LpSolution simplex_solve(const LinearProgram& lp);

/// Rigorous lower bound on min objective.x over the LP's feasible region,
/// recomputed from the floating duals in interval arithmetic
/// (Neumaier-Shcherbina). Never trusts sol.objective_value. Returns -inf
/// when a duals sign condition fails.
double safe_lower_bound(const LinearProgram& lp, const LpSolution& sol);

}  // namespace certopt
