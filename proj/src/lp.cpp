#include "genhess/lp.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace genhess {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-9;

// Tableau layout: columns [structural | slacks | artificials | rhs], one
// extra top row for the objective. basis[i] is the column basic in row i.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int n_rows;
  int n_cols;  // without rhs
  int art_begin;
  bool bland = false;
  int degenerate_streak = 0;

  double rhs(int i) const { return t(i + 1, n_cols); }
  double obj() const { return -t(0, n_cols); }

  void pivot(int row, int col) {
    Eigen::RowVectorXd pr = t.row(row + 1) / t(row + 1, col);
    t.row(row + 1) = pr;
    for (int i = 0; i < n_rows + 1; ++i) {
      if (i == row + 1) continue;
      const double factor = t(i, col);
      if (factor != 0.0) t.row(i) -= factor * pr;
    }
    basis[row] = col;
  }

  // One simplex phase on the current objective row. Columns with
  // allowed[j] == false never enter. Returns false on unboundedness.
  bool iterate(const std::vector<char>& allowed) {
    const int max_iters = 2000 * (n_rows + n_cols) + 10000;
    for (int iter = 0; iter < max_iters; ++iter) {
      int enter = -1;
      if (bland) {
        for (int j = 0; j < n_cols; ++j) {
          if (allowed[j] && t(0, j) < -kReducedCostTol) {
            enter = j;
            break;
          }
        }
      } else {
        double best = -kReducedCostTol;
        for (int j = 0; j < n_cols; ++j) {
          if (allowed[j] && t(0, j) < best) {
            best = t(0, j);
            enter = j;
          }
        }
      }
      if (enter < 0) return true;  // optimal

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n_rows; ++i) {
        const double a = t(i + 1, enter);
        if (a > kPivotTol) {
          const double ratio = rhs(i) / a;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && leave >= 0 &&
               basis[i] < basis[leave])) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded

      if (best_ratio < 1e-12) {
        if (++degenerate_streak > 2 * (n_rows + n_cols)) bland = true;
      } else {
        degenerate_streak = 0;
      }
      pivot(leave, enter);
    }
    throw std::runtime_error("solve_lp: simplex iteration limit exceeded");
  }
};

void validate_inputs(const Eigen::VectorXd& c, const std::vector<LPRow>& rows) {
  if (!c.allFinite()) {
    throw std::invalid_argument("solve_lp: objective has non-finite entries");
  }
  for (size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].coefs.size() != c.size()) {
      std::ostringstream msg;
      msg << "solve_lp: row " << k << " has " << rows[k].coefs.size()
          << " coefficients, expected " << c.size();
      throw std::invalid_argument(msg.str());
    }
    if (!rows[k].coefs.allFinite() || !std::isfinite(rows[k].rhs)) {
      throw std::invalid_argument("solve_lp: non-finite row data");
    }
  }
}

}  // namespace

LPOutcome solve_lp(const Eigen::VectorXd& c, const std::vector<LPRow>& rows,
                   bool maximize, bool var_nonneg) {
  validate_inputs(c, rows);
  const int n_orig = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());

  // Standard form: free variables split into positive/negative parts,
  // a slack per inequality, an artificial wherever the slack cannot start
  // basic. Rows are flipped so every rhs is nonnegative.
  const int n_struct = var_nonneg ? n_orig : 2 * n_orig;
  int n_slack = 0;
  for (const LPRow& r : rows) {
    if (r.rel == Relation::LessEq) ++n_slack;
  }

  std::vector<int> art_of_row(m, -1);
  int n_art = 0;
  {
    for (int i = 0; i < m; ++i) {
      const bool flipped = rows[i].rhs < 0.0;
      if (rows[i].rel == Relation::Eq || flipped) art_of_row[i] = n_art++;
    }
  }

  Tableau tab;
  tab.n_rows = m;
  tab.n_cols = n_struct + n_slack + n_art;
  tab.art_begin = n_struct + n_slack;
  tab.t = Eigen::MatrixXd::Zero(m + 1, tab.n_cols + 1);
  tab.basis.assign(m, -1);

  int slack_col = n_struct;
  for (int i = 0; i < m; ++i) {
    const double sgn = rows[i].rhs < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n_orig; ++j) {
      const double a = sgn * rows[i].coefs[j];
      if (var_nonneg) {
        tab.t(i + 1, j) = a;
      } else {
        tab.t(i + 1, 2 * j) = a;
        tab.t(i + 1, 2 * j + 1) = -a;
      }
    }
    tab.t(i + 1, tab.n_cols) = sgn * rows[i].rhs;
    if (rows[i].rel == Relation::LessEq) {
      tab.t(i + 1, slack_col) = sgn;
      if (sgn > 0.0) tab.basis[i] = slack_col;
      ++slack_col;
    }
    if (art_of_row[i] >= 0) {
      const int col = tab.art_begin + art_of_row[i];
      tab.t(i + 1, col) = 1.0;
      tab.basis[i] = col;
    }
  }

  std::vector<char> allowed(tab.n_cols, 1);

  LPOutcome out;

  // Phase 1: minimize the sum of artificials.
  double phase1_opt = 0.0;
  if (n_art > 0) {
    for (int j = tab.art_begin; j < tab.n_cols; ++j) tab.t(0, j) = 1.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] >= tab.art_begin) tab.t.row(0) -= tab.t.row(i + 1);
    }
    if (!tab.iterate(allowed)) {
      throw std::runtime_error("solve_lp: phase-1 unbounded (numerical failure)");
    }
    phase1_opt = tab.obj();
  }
  out.infeasibility = std::max(phase1_opt, 0.0);

  // Primal extraction helper (also used for the phase-1 point).
  auto extract_primal = [&]() {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_orig);
    for (int i = 0; i < m; ++i) {
      const int col = tab.basis[i];
      if (col < n_struct) {
        if (var_nonneg) {
          x[col] += tab.rhs(i);
        } else {
          x[col / 2] += (col % 2 == 0 ? 1.0 : -1.0) * tab.rhs(i);
        }
      }
    }
    return x;
  };

  double rhs_scale = 0.0;
  for (const LPRow& r : rows) rhs_scale += std::abs(r.rhs);
  const double feas_gate = 1e-9 * (1.0 + rhs_scale);
  if (phase1_opt > feas_gate) {
    out.status = LPStatus::Infeasible;
    out.primal = extract_primal();
    return out;
  }

  // Drive leftover basic artificials out, pivoting on the largest entry of
  // the row. A row with no usable pivot is redundant and its artificial
  // stays basic at zero, barred from re-entry; pivoting on a near-zero
  // entry would amplify the phase-1 residual instead.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < tab.art_begin) continue;
    int col = -1;
    double best = 1e-7;
    for (int j = 0; j < tab.art_begin; ++j) {
      if (std::abs(tab.t(i + 1, j)) > best) {
        best = std::abs(tab.t(i + 1, j));
        col = j;
      }
    }
    if (col >= 0) tab.pivot(i, col);
  }
  for (int j = tab.art_begin; j < tab.n_cols; ++j) allowed[j] = 0;

  // Phase 2 on the real objective (internally minimize).
  tab.t.row(0).setZero();
  const double obj_sgn = maximize ? -1.0 : 1.0;
  for (int j = 0; j < n_orig; ++j) {
    if (var_nonneg) {
      tab.t(0, j) = obj_sgn * c[j];
    } else {
      tab.t(0, 2 * j) = obj_sgn * c[j];
      tab.t(0, 2 * j + 1) = -obj_sgn * c[j];
    }
  }
  for (int i = 0; i < m; ++i) {
    const double coef = tab.t(0, tab.basis[i]);
    if (coef != 0.0) tab.t.row(0) -= coef * tab.t.row(i + 1);
  }
  tab.degenerate_streak = 0;
  if (!tab.iterate(allowed)) {
    out.status = LPStatus::Unbounded;
    return out;
  }

  out.status = LPStatus::Optimal;
  out.primal = extract_primal();
  out.objective = c.dot(out.primal);
  return out;
}

StrictFeasibility strict_feasibility(
    const std::vector<std::pair<Eigen::VectorXd, int>>& rows) {
  StrictFeasibility result;
  if (rows.empty()) {
    result.feasible = true;
    result.witness = Eigen::VectorXd();
    result.margin = std::numeric_limits<double>::infinity();
    return result;
  }
  const Eigen::Index n = rows.front().first.size();
  for (size_t k = 0; k < rows.size(); ++k) {
    const auto& [a, sign] = rows[k];
    if (a.size() != n) {
      std::ostringstream msg;
      msg << "strict_feasibility: row " << k << " has length " << a.size()
          << ", expected " << n;
      throw std::invalid_argument(msg.str());
    }
    if (sign != 1 && sign != -1) {
      throw std::invalid_argument("strict_feasibility: sign must be +1 or -1");
    }
    if (a.norm() == 0.0) {
      throw std::invalid_argument("strict_feasibility: zero row");
    }
  }

  // Variables (y, t): maximize t subject to sign * <a/|a|, y> >= t and
  // |y|_inf <= 1. The box keeps the LP bounded; t* > 0 iff the open system
  // has a solution, and the witness then carries margin t* per unit row.
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c[n] = 1.0;
  std::vector<LPRow> lp_rows;
  lp_rows.reserve(rows.size() + 2 * n);
  for (const auto& [a, sign] : rows) {
    LPRow row;
    row.coefs = Eigen::VectorXd::Zero(n + 1);
    row.coefs.head(n) = -static_cast<double>(sign) * a.normalized();
    row.coefs[n] = 1.0;
    row.rhs = 0.0;
    lp_rows.push_back(std::move(row));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    LPRow up, dn;
    up.coefs = Eigen::VectorXd::Zero(n + 1);
    up.coefs[j] = 1.0;
    up.rhs = 1.0;
    dn.coefs = Eigen::VectorXd::Zero(n + 1);
    dn.coefs[j] = -1.0;
    dn.rhs = 1.0;
    lp_rows.push_back(std::move(up));
    lp_rows.push_back(std::move(dn));
  }

  const LPOutcome lp = solve_lp(c, lp_rows, /*maximize=*/true);
  if (lp.status == LPStatus::Optimal && lp.objective >= kStrictTol) {
    result.feasible = true;
    result.witness = lp.primal.head(n);
    result.margin = lp.objective;
  }
  return result;
}

HullMembership hull_membership(const std::vector<Eigen::MatrixXd>& extremes,
                               const Eigen::MatrixXd& target) {
  if (extremes.empty()) {
    throw std::invalid_argument("hull_membership: no extreme matrices given");
  }
  const Eigen::Index n = target.rows();
  if (target.cols() != n) {
    throw std::invalid_argument("hull_membership: target is not square");
  }
  auto check_symmetric = [n](const Eigen::MatrixXd& M, const char* what) {
    if (M.rows() != n || M.cols() != n) {
      std::ostringstream msg;
      msg << "hull_membership: " << what << " is " << M.rows() << "x"
          << M.cols() << ", expected " << n << "x" << n;
      throw std::invalid_argument(msg.str());
    }
    const double scale = 1.0 + M.cwiseAbs().maxCoeff();
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      throw std::invalid_argument(
          std::string("hull_membership: ") + what + " is not symmetric");
    }
  };
  check_symmetric(target, "target");
  for (const auto& E : extremes) check_symmetric(E, "extreme");

  const int K = static_cast<int>(extremes.size());
  const int dim = static_cast<int>(n * (n + 1) / 2);

  // The alpha system is solved on data divided by its own scale so the
  // matrix rows and the sum(alpha) = 1 row are commensurate; the solution
  // set is unchanged and the certification threshold maps through exactly.
  double scale = target.norm();
  for (const auto& E : extremes) scale = std::max(scale, E.norm());
  scale += 1.0;

  // Equality rows over the vectorized upper triangle, plus sum(alpha) = 1.
  std::vector<LPRow> rows;
  rows.reserve(dim + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      LPRow row;
      row.coefs = Eigen::VectorXd(K);
      for (int k = 0; k < K; ++k) row.coefs[k] = extremes[k](i, j) / scale;
      row.rel = Relation::Eq;
      row.rhs = target(i, j) / scale;
      rows.push_back(std::move(row));
    }
  }
  LPRow sum_row;
  sum_row.coefs = Eigen::VectorXd::Ones(K);
  sum_row.rel = Relation::Eq;
  sum_row.rhs = 1.0;
  rows.push_back(std::move(sum_row));

  const LPOutcome lp = solve_lp(Eigen::VectorXd::Zero(K), rows,
                                /*maximize=*/false, /*var_nonneg=*/true);

  HullMembership result;
  result.extremes_count = K;
  const double gap_tol = 1e-7 * (1.0 + target.norm()) / scale;
  if (lp.status == LPStatus::Optimal) {
    result.member = true;
    result.weights = lp.primal;
  } else if (lp.infeasibility <= gap_tol) {
    // Residual below the certification threshold: accept the phase-1 point.
    result.member = true;
    result.weights = lp.primal.cwiseMax(0.0);
    const double s = result.weights.sum();
    if (s > 0.0) result.weights /= s;
  } else {
    result.member = false;
    result.phase1_gap = lp.infeasibility * scale;
  }
  return result;
}

}  // namespace genhess
