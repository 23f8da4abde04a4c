#ifndef GENHESS_LINEAR_SYSTEM_HPP
#define GENHESS_LINEAR_SYSTEM_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace genhess {

/// Inequality system A x <= b with the activity tolerance used to classify
/// rows at a query point. Immutable after construction; safe to share.
class LinearSystem {
 public:
  LinearSystem(Eigen::MatrixXd A, Eigen::VectorXd b, double eps_active = 1e-9);

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }
  double eps_active() const { return eps_active_; }

  Eigen::Index rows() const { return A_.rows(); }
  Eigen::Index cols() const { return A_.cols(); }

  /// Euclidean norm of row i, cached at construction.
  double row_norm(Eigen::Index i) const { return row_norms_[i]; }
  const Eigen::VectorXd& row_norms() const { return row_norms_; }

  /// A row that is identically zero never changes its residual and admits
  /// no strict sign; several operations treat such rows specially.
  bool is_zero_row(Eigen::Index i) const { return row_norms_[i] == 0.0; }

  /// Scale-invariant activity bound for row i: eps_active * (1 + |A_i|).
  double activity_bound(Eigen::Index i) const {
    return eps_active_ * (1.0 + row_norms_[i]);
  }

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  double eps_active_;
  Eigen::VectorXd row_norms_;
};

/// Index partition of the rows at a point: active (residual ~ 0),
/// violated (> 0), satisfied (< 0). Lists are sorted and disjoint.
struct ActivityPartition {
  Eigen::VectorXd point;
  std::vector<int> active;
  std::vector<int> violated;
  std::vector<int> satisfied;
  Eigen::VectorXd residuals;  // r_i = <A_i, x> - b_i
};

enum class StarEntry { Zero, One, Interval01 };

/// Diagonal of the candidate set: entry i is One on violated rows, Zero on
/// satisfied rows and the full interval [0,1] on active rows.
struct StarDiagonal {
  std::vector<StarEntry> entries;
};

enum class HessianLabelKind { DPlus, DMinus, Pattern, ExtremeV };

/// Provenance tag for a candidate matrix: which diagonal produced it.
struct HessianLabel {
  HessianLabelKind kind;
  Eigen::VectorXi binary;    // the 0/1 diagonal, when applicable
  std::string pattern;       // sign string over active rows, when applicable
};

/// A^T diag(v) A for some v with entries in [0,1]; symmetric and PSD.
struct CandidateHessian {
  Eigen::MatrixXd matrix;
  HessianLabel label;
};

enum class DSide { Plus, Minus };

/// f(x) = 1/2 |(Ax - b)_+|^2.
double eval_f(const LinearSystem& sys, const Eigen::VectorXd& x);

/// Gradient A^T (Ax - b)_+; exact, no tolerance involved.
Eigen::VectorXd eval_grad(const LinearSystem& sys, const Eigen::VectorXd& x);

ActivityPartition classify_indices(const LinearSystem& sys,
                                   const Eigen::VectorXd& x);

StarDiagonal star_diagonal(const LinearSystem& sys,
                           const ActivityPartition& part);

/// A^T D A with D the binary diagonal selecting violated rows (Plus) or
/// violated plus active rows (Minus).
CandidateHessian d_matrix(const LinearSystem& sys,
                          const ActivityPartition& part, DSide side);

/// A^T diag(v) A for a binary vector v of length m.
CandidateHessian candidate_from_binary(const LinearSystem& sys,
                                       const Eigen::VectorXi& v);

}  // namespace genhess

#endif  // GENHESS_LINEAR_SYSTEM_HPP
