#ifndef GENHESS_NEWTON_HPP
#define GENHESS_NEWTON_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "genhess/linear_system.hpp"

namespace genhess {

struct NewtonOptions {
  double delta = -1.0;       // < 0: scale-aware default 1e-8 * (1 + |A^T A|)
  double grad_tol = 1e-10;
  int max_iter = 100;
  double armijo_slope = 1e-4;
  double backtrack = 0.5;
};

enum class NewtonStatus { Converged, MaxIter, Stalled };

struct NewtonIterate {
  Eigen::VectorXd x;
  double f = 0.0;
  double grad_norm = 0.0;
};

struct SolveTrace {
  std::vector<NewtonIterate> iterates;
  NewtonStatus status = NewtonStatus::Stalled;
  double delta = 0.0;
  double armijo_slope = 0.0;
  double backtrack = 0.0;
  std::string diagnostic;  // set when Stalled
};

/// Regularized generalized Newton iteration on f: steps solve
/// (A^T D- A + delta I) d = grad f with Armijo backtracking, using the
/// D- element so curvature from active rows is kept at the boundary.
/// Accepted steps strictly decrease f.
SolveTrace newton_solve(const LinearSystem& sys, const Eigen::VectorXd& x0,
                        const NewtonOptions& opts = {});

}  // namespace genhess

#endif  // GENHESS_NEWTON_HPP
