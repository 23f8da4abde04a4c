#ifndef GENHESS_LP_HPP
#define GENHESS_LP_HPP

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace genhess {

enum class Relation { LessEq, Eq };

struct LPRow {
  Eigen::VectorXd coefs;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Eigen::VectorXd primal;      // valid iff Optimal (phase-1 end values otherwise)
  double objective = 0.0;      // valid iff Optimal
  double infeasibility = 0.0;  // phase-1 optimum; > 0 iff Infeasible
};

/// Dense two-phase tableau simplex. Dantzig pricing, switching to Bland's
/// rule once a degenerate streak is detected, so the iteration cannot cycle.
/// Variables are free unless var_nonneg is set.
LPOutcome solve_lp(const Eigen::VectorXd& c, const std::vector<LPRow>& rows,
                   bool maximize, bool var_nonneg = false);

struct StrictFeasibility {
  bool feasible = false;
  Eigen::VectorXd witness;  // valid iff feasible
  double margin = 0.0;      // best t over the unit box, valid iff feasible
};

/// Margin threshold below which a strict sign system counts as infeasible.
inline constexpr double kStrictTol = 1e-7;

/// Decide whether some y satisfies sign_i * <a_i, y> > 0 for every row, by
/// maximizing the common margin t of the normalized rows over |y|_inf <= 1.
/// Rows are (a_i, sign_i) with sign_i in {+1, -1}; zero rows are rejected.
StrictFeasibility strict_feasibility(
    const std::vector<std::pair<Eigen::VectorXd, int>>& rows);

struct HullMembership {
  bool member = false;
  Eigen::VectorXd weights;   // valid iff member; nonnegative, sums to 1
  int extremes_count = 0;
  double phase1_gap = 0.0;   // alpha-system phase-1 optimum when not member
};

/// Decide whether target lies in the convex hull of the extreme matrices by
/// solving the feasibility system sum_k alpha_k E_k = T, sum alpha = 1,
/// alpha >= 0 over the vectorized upper triangles. Non-membership is
/// certified by a phase-1 optimum above 1e-7 * (1 + |T|_F).
HullMembership hull_membership(const std::vector<Eigen::MatrixXd>& extremes,
                               const Eigen::MatrixXd& target);

}  // namespace genhess

#endif  // GENHESS_LP_HPP
