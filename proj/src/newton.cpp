#include "genhess/newton.hpp"

#include <cmath>
#include <stdexcept>

namespace genhess {

SolveTrace newton_solve(const LinearSystem& sys, const Eigen::VectorXd& x0,
                        const NewtonOptions& opts) {
  if (x0.size() != sys.cols()) {
    throw std::invalid_argument("newton_solve: x0 has wrong length");
  }
  if (opts.grad_tol <= 0.0 || opts.max_iter < 0 || opts.backtrack <= 0.0 ||
      opts.backtrack >= 1.0 || opts.armijo_slope <= 0.0) {
    throw std::invalid_argument("newton_solve: invalid options");
  }

  SolveTrace trace;
  trace.armijo_slope = opts.armijo_slope;
  trace.backtrack = opts.backtrack;
  trace.delta = opts.delta;
  if (!(trace.delta > 0.0)) {
    const Eigen::MatrixXd gram = sys.A().transpose() * sys.A();
    trace.delta = 1e-8 * (1.0 + gram.cwiseAbs().rowwise().sum().maxCoeff());
  }

  const Eigen::Index n = sys.cols();
  Eigen::VectorXd x = x0;
  double f = eval_f(sys, x);
  Eigen::VectorXd g = eval_grad(sys, x);
  trace.iterates.push_back({x, f, g.norm()});

  if (!std::isfinite(f) || !g.allFinite()) {
    trace.status = NewtonStatus::Stalled;
    trace.diagnostic = "non-finite objective or gradient at the start point";
    return trace;
  }

  for (int iter = 0;; ++iter) {
    if (g.norm() <= opts.grad_tol) {
      trace.status = NewtonStatus::Converged;
      return trace;
    }
    if (iter >= opts.max_iter) {
      trace.status = NewtonStatus::MaxIter;
      return trace;
    }

    const ActivityPartition part = classify_indices(sys, x);
    Eigen::MatrixXd H =
        d_matrix(sys, part, DSide::Minus).matrix +
        trace.delta * Eigen::MatrixXd::Identity(n, n);
    const Eigen::VectorXd dir = H.ldlt().solve(g);
    const double slope = g.dot(dir);  // > 0 since H is positive definite
    if (!dir.allFinite() || !(slope > 0.0)) {
      trace.status = NewtonStatus::Stalled;
      trace.diagnostic = "search direction is not a descent direction";
      return trace;
    }

    double t = 1.0;
    double f_new = 0.0;
    bool stepped = false;
    while (t > 1e-20) {
      const Eigen::VectorXd x_new = x - t * dir;
      f_new = eval_f(sys, x_new);
      if (std::isfinite(f_new) && f_new <= f - opts.armijo_slope * t * slope) {
        x = x_new;
        stepped = true;
        break;
      }
      t *= opts.backtrack;
    }
    if (!stepped) {
      trace.status = NewtonStatus::Stalled;
      trace.diagnostic = "line search failed to make progress";
      return trace;
    }

    f = f_new;
    g = eval_grad(sys, x);
    trace.iterates.push_back({x, f, g.norm()});
    if (!std::isfinite(f) || !g.allFinite()) {
      trace.status = NewtonStatus::Stalled;
      trace.diagnostic = "non-finite objective or gradient";
      return trace;
    }
  }
}

}  // namespace genhess
