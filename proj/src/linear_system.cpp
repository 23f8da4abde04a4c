#include "genhess/linear_system.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace genhess {

namespace {

void check_point(const LinearSystem& sys, const Eigen::VectorXd& x,
                 const char* op) {
  if (x.size() != sys.cols()) {
    std::ostringstream msg;
    msg << op << ": point has length " << x.size() << ", expected "
        << sys.cols();
    throw std::invalid_argument(msg.str());
  }
  if (!x.allFinite()) {
    throw std::invalid_argument(std::string(op) + ": point has non-finite entries");
  }
}

}  // namespace

LinearSystem::LinearSystem(Eigen::MatrixXd A, Eigen::VectorXd b,
                           double eps_active)
    : A_(std::move(A)), b_(std::move(b)), eps_active_(eps_active) {
  if (A_.rows() < 1 || A_.cols() < 1) {
    std::ostringstream msg;
    msg << "LinearSystem: matrix must be at least 1x1, got " << A_.rows()
        << "x" << A_.cols();
    throw std::invalid_argument(msg.str());
  }
  if (b_.size() != A_.rows()) {
    std::ostringstream msg;
    msg << "LinearSystem: b has length " << b_.size() << ", expected "
        << A_.rows();
    throw std::invalid_argument(msg.str());
  }
  if (!A_.allFinite() || !b_.allFinite()) {
    throw std::invalid_argument("LinearSystem: A and b must be finite");
  }
  if (!(eps_active_ >= 0.0)) {
    throw std::invalid_argument("LinearSystem: eps_active must be >= 0");
  }
  row_norms_ = A_.rowwise().norm();
}

double eval_f(const LinearSystem& sys, const Eigen::VectorXd& x) {
  check_point(sys, x, "eval_f");
  const Eigen::VectorXd r = sys.A() * x - sys.b();
  return 0.5 * r.cwiseMax(0.0).squaredNorm();
}

Eigen::VectorXd eval_grad(const LinearSystem& sys, const Eigen::VectorXd& x) {
  check_point(sys, x, "eval_grad");
  const Eigen::VectorXd r = sys.A() * x - sys.b();
  return sys.A().transpose() * r.cwiseMax(0.0);
}

ActivityPartition classify_indices(const LinearSystem& sys,
                                   const Eigen::VectorXd& x) {
  check_point(sys, x, "classify_indices");
  ActivityPartition part;
  part.point = x;
  part.residuals = sys.A() * x - sys.b();
  for (int i = 0; i < sys.rows(); ++i) {
    const double r = part.residuals[i];
    const double bound = sys.activity_bound(i);
    if (std::abs(r) <= bound) {
      part.active.push_back(i);
    } else if (r > bound) {
      part.violated.push_back(i);
    } else {
      part.satisfied.push_back(i);
    }
  }
  return part;
}

StarDiagonal star_diagonal(const LinearSystem& sys,
                           const ActivityPartition& part) {
  StarDiagonal star;
  star.entries.assign(static_cast<size_t>(sys.rows()), StarEntry::Zero);
  for (int i : part.active) star.entries[i] = StarEntry::Interval01;
  for (int i : part.violated) star.entries[i] = StarEntry::One;
  return star;
}

CandidateHessian d_matrix(const LinearSystem& sys,
                          const ActivityPartition& part, DSide side) {
  Eigen::VectorXi v = Eigen::VectorXi::Zero(sys.rows());
  for (int i : part.violated) v[i] = 1;
  if (side == DSide::Minus) {
    for (int i : part.active) v[i] = 1;
  }
  CandidateHessian cand = candidate_from_binary(sys, v);
  cand.label.kind =
      side == DSide::Plus ? HessianLabelKind::DPlus : HessianLabelKind::DMinus;
  return cand;
}

CandidateHessian candidate_from_binary(const LinearSystem& sys,
                                       const Eigen::VectorXi& v) {
  if (v.size() != sys.rows()) {
    std::ostringstream msg;
    msg << "candidate_from_binary: v has length " << v.size() << ", expected "
        << sys.rows();
    throw std::invalid_argument(msg.str());
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(sys.cols(), sys.cols());
  for (int i = 0; i < sys.rows(); ++i) {
    if (v[i] != 0 && v[i] != 1) {
      throw std::invalid_argument("candidate_from_binary: v must be 0/1");
    }
    if (v[i] == 1) {
      M.selfadjointView<Eigen::Lower>().rankUpdate(sys.A().row(i).transpose());
    }
  }
  M.triangularView<Eigen::Upper>() = M.transpose();
  CandidateHessian cand;
  cand.matrix = std::move(M);
  cand.label.kind = HessianLabelKind::ExtremeV;
  cand.label.binary = v;
  return cand;
}

}  // namespace genhess
