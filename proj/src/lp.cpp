#include "certopt/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace certopt {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;

struct Tableau {
  Eigen::MatrixXd body;        // rows x (cols + 1), last column is rhs
  std::vector<int> basis;      // basic column per row
  Eigen::Index cols = 0;

  double rhs(Eigen::Index i) const { return body(i, cols); }
};

// One simplex phase over the given cost vector. Entering variable: lowest
// index with negative reduced cost (Bland); leaving: min ratio, ties by
// lowest basic variable index. Returns false when the cap is hit.
enum class PhaseResult { Optimal, Unbounded, IterationCap };

PhaseResult run_phase(Tableau& t, const Eigen::VectorXd& cost, Eigen::Index first_forbidden,
                      long long& iterations_left) {
  const Eigen::Index m = t.body.rows();
  while (true) {
    if (--iterations_left < 0) return PhaseResult::IterationCap;
    // Reduced costs from the current basis.
    Eigen::VectorXd cb(m);
    for (Eigen::Index i = 0; i < m; ++i) cb[i] = cost[t.basis[static_cast<std::size_t>(i)]];
    int entering = -1;
    for (Eigen::Index j = 0; j < first_forbidden; ++j) {
      double d = cost[j] - cb.dot(t.body.col(j));
      if (d < -kPivotTol) {
        entering = static_cast<int>(j);
        break;
      }
    }
    if (entering < 0) return PhaseResult::Optimal;
    int leaving = -1;
    double best_ratio = kInf;
    for (Eigen::Index i = 0; i < m; ++i) {
      double a = t.body(i, entering);
      if (a > kPivotTol) {
        double ratio = t.rhs(i) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && leaving >= 0 &&
             t.basis[static_cast<std::size_t>(i)] < t.basis[static_cast<std::size_t>(leaving)])) {
          best_ratio = ratio;
          leaving = static_cast<int>(i);
        }
      }
    }
    if (leaving < 0) return PhaseResult::Unbounded;
    // Pivot.
    double piv = t.body(leaving, entering);
    t.body.row(leaving) /= piv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leaving) continue;
      double f = t.body(i, entering);
      if (f != 0.0) t.body.row(i) -= f * t.body.row(leaving);
    }
    t.basis[static_cast<std::size_t>(leaving)] = entering;
  }
}

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp) {
  LpSolution out;
  const Eigen::Index n = lp.num_vars();
  const Eigen::Index m_rows = static_cast<Eigen::Index>(lp.rows.size());

  for (Eigen::Index j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower[j]) || !std::isfinite(lp.upper[j])) {
      out.status = LpStatus::NumericalFailure;
      return out;
    }
    if (lp.lower[j] > lp.upper[j]) {
      out.status = LpStatus::Infeasible;
      return out;
    }
  }

  // Shift to y = x - lower >= 0 and append one upper-bound row per variable.
  // Internal rows: [original rows; y_j <= upper_j - lower_j].
  const Eigen::Index m = m_rows + n;
  Eigen::Index num_le = n;  // bound rows are all <=
  for (const auto& row : lp.rows) {
    if (row.rel == Relation::LeZero) ++num_le;
  }
  const Eigen::Index num_struct = n + num_le;          // y vars + slacks
  const Eigen::Index total_cols = num_struct + m;      // + artificials

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, total_cols + 1);
  std::vector<double> flip(static_cast<std::size_t>(m), 1.0);
  Eigen::Index slack = n;
  for (Eigen::Index i = 0; i < m; ++i) {
    double rhs;
    if (i < m_rows) {
      const auto& row = lp.rows[static_cast<std::size_t>(i)];
      M.row(i).head(n) = row.coeffs.transpose();
      rhs = row.rhs - row.coeffs.dot(lp.lower);
      if (row.rel == Relation::LeZero) M(i, slack++) = 1.0;
    } else {
      Eigen::Index j = i - m_rows;
      M(i, j) = 1.0;
      rhs = lp.upper[j] - lp.lower[j];
      M(i, slack++) = 1.0;
    }
    if (rhs < 0.0) {
      M.row(i).head(num_struct) *= -1.0;
      rhs = -rhs;
      flip[static_cast<std::size_t>(i)] = -1.0;
    }
    M(i, num_struct + i) = 1.0;  // artificial
    M(i, total_cols) = rhs;
  }

  Tableau t;
  t.body = M;
  t.cols = total_cols;
  t.basis.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) t.basis[static_cast<std::size_t>(i)] = static_cast<int>(num_struct + i);

  long long cap = 10LL * (m + total_cols) * (m + total_cols);

  // Phase 1: minimize the artificial sum.
  Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(total_cols);
  phase1_cost.tail(m).setOnes();
  PhaseResult r1 = run_phase(t, phase1_cost, total_cols, cap);
  if (r1 == PhaseResult::IterationCap) {
    out.status = LpStatus::NumericalFailure;
    return out;
  }
  double infeas = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (t.basis[static_cast<std::size_t>(i)] >= num_struct) infeas += t.rhs(i);
  }
  if (infeas > kFeasTol) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // Drive remaining (degenerate) artificials out of the basis; rows where
  // no structural pivot exists are redundant and get removed.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (t.basis[static_cast<std::size_t>(i)] < num_struct) {
      keep.push_back(i);
      continue;
    }
    int pivot_col = -1;
    for (Eigen::Index j = 0; j < num_struct; ++j) {
      if (std::abs(t.body(i, j)) > kPivotTol) {
        pivot_col = static_cast<int>(j);
        break;
      }
    }
    if (pivot_col < 0) continue;  // redundant row
    double piv = t.body(i, pivot_col);
    t.body.row(i) /= piv;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (k == i) continue;
      double f = t.body(k, pivot_col);
      if (f != 0.0) t.body.row(k) -= f * t.body.row(i);
    }
    t.basis[static_cast<std::size_t>(i)] = pivot_col;
    keep.push_back(i);
  }
  if (static_cast<Eigen::Index>(keep.size()) != m) {
    Tableau t2;
    t2.cols = t.cols;
    t2.body.resize(static_cast<Eigen::Index>(keep.size()), t.body.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      t2.body.row(static_cast<Eigen::Index>(i)) = t.body.row(keep[i]);
      t2.basis.push_back(t.basis[static_cast<std::size_t>(keep[i])]);
    }
    t = std::move(t2);
  }

  // Phase 2 on the real objective; artificial columns are forbidden.
  Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(total_cols);
  phase2_cost.head(n) = lp.objective;
  PhaseResult r2 = run_phase(t, phase2_cost, num_struct, cap);
  if (r2 == PhaseResult::IterationCap) {
    out.status = LpStatus::NumericalFailure;
    return out;
  }
  if (r2 == PhaseResult::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  // Primal solution.
  Eigen::VectorXd y = Eigen::VectorXd::Zero(total_cols);
  for (Eigen::Index i = 0; i < t.body.rows(); ++i) {
    y[t.basis[static_cast<std::size_t>(i)]] = t.rhs(i);
  }
  out.primal = lp.lower + y.head(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.primal[j] = std::min(std::max(out.primal[j], lp.lower[j]), lp.upper[j]);
  }
  out.objective_value = lp.objective.dot(out.primal);

  // Row duals from the final basis: solve B^T lambda = c_B on the original
  // (pre-elimination) columns of the kept rows, then undo row flips. The
  // multiplier for row i in <=-form is mu_i = -flip_i * lambda_i.
  const Eigen::Index mk = t.body.rows();
  Eigen::MatrixXd B(mk, mk);
  Eigen::VectorXd cb(mk);
  std::vector<Eigen::Index> kept_rows;
  if (static_cast<Eigen::Index>(keep.size()) == mk) {
    kept_rows.assign(keep.begin(), keep.end());
  } else {
    for (Eigen::Index i = 0; i < mk; ++i) kept_rows.push_back(i);
  }
  for (Eigen::Index i = 0; i < mk; ++i) {
    for (Eigen::Index r = 0; r < mk; ++r) {
      B(r, i) = M(kept_rows[static_cast<std::size_t>(r)], t.basis[static_cast<std::size_t>(i)]);
    }
    cb[i] = phase2_cost[t.basis[static_cast<std::size_t>(i)]];
  }
  Eigen::VectorXd lambda_hat = B.transpose().partialPivLu().solve(cb);
  out.duals = Eigen::VectorXd::Zero(m_rows);
  for (Eigen::Index r = 0; r < mk; ++r) {
    Eigen::Index orig = kept_rows[static_cast<std::size_t>(r)];
    if (orig < m_rows) {
      out.duals[orig] = -flip[static_cast<std::size_t>(orig)] * lambda_hat[r];
    }
  }

  // Post-check primal residuals; a violated row is a numerical failure.
  for (const auto& row : lp.rows) {
    double v = row.coeffs.dot(out.primal);
    double viol = row.rel == Relation::EqZero ? std::abs(v - row.rhs) : v - row.rhs;
    if (viol > kFeasTol) {
      out.status = LpStatus::NumericalFailure;
      return out;
    }
  }
  out.status = LpStatus::Optimal;
  return out;
}

double safe_lower_bound(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.status != LpStatus::Optimal) return -kInf;
  const Eigen::Index n = lp.num_vars();
  const Eigen::Index m = static_cast<Eigen::Index>(lp.rows.size());

  Eigen::VectorXd lambda = sol.duals;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (lp.rows[static_cast<std::size_t>(i)].rel == Relation::LeZero) {
      if (lambda[i] < -1e-9) return -kInf;  // wrong-signed multiplier
      lambda[i] = std::max(lambda[i], 0.0);
    }
  }

  // r = c + A^T lambda and bound = inf_box r.x - lambda.b, all in interval
  // arithmetic so simplex rounding cannot invalidate the result.
  Interval bound(0.0, 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    Interval rj(lp.objective[j], lp.objective[j]);
    for (Eigen::Index i = 0; i < m; ++i) {
      double a = lp.rows[static_cast<std::size_t>(i)].coeffs[j];
      if (a != 0.0 && lambda[i] != 0.0) {
        rj = rj + Interval(lambda[i], lambda[i]) * Interval(a, a);
      }
    }
    bound = bound + rj * Interval(lp.lower[j], lp.upper[j]);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (lambda[i] != 0.0) {
      double b = lp.rows[static_cast<std::size_t>(i)].rhs;
      bound = bound - Interval(lambda[i], lambda[i]) * Interval(b, b);
    }
  }
  return bound.lo();
}

}  // namespace certopt
