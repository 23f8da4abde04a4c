#ifndef GENHESS_ANALYSIS_HPP
#define GENHESS_ANALYSIS_HPP

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

#include "genhess/linear_system.hpp"
#include "genhess/lp.hpp"

namespace genhess {

inline constexpr int kDefaultMaxActive = 20;

/// Raised when the active set at the query point exceeds the enumeration
/// cap; callers should fall back to the sampling oracle.
class ActiveSetTooLarge : public std::runtime_error {
 public:
  ActiveSetTooLarge(int active_count, int limit);
  int active_count;
  int limit;
};

/// A strict sign assignment on the (nonzero) active rows, together with a
/// direction realizing it: signs[k] * <A_i, witness> >= margin * |A_i| for
/// every listed row i. One achievable pattern = one full-dimensional cell
/// of the central arrangement, hence one limiting Hessian.
struct SignPattern {
  std::vector<int> indices;  // active rows carrying a sign, ascending
  std::vector<int> signs;    // +1 / -1, parallel to indices
  Eigen::VectorXd witness;
  double margin = 0.0;

  std::string to_string() const;  // e.g. "+-+" over indices
};

/// The exact generalized Hessian at a point: convex hull of the limiting
/// Hessians, one extreme per achievable pattern after deduplication.
struct HessianHull {
  std::vector<CandidateHessian> extremes;
  Eigen::VectorXd point;
  Eigen::VectorXi base_pattern;  // 1 on violated rows, 0 elsewhere

  std::vector<Eigen::MatrixXd> extreme_matrices() const;
};

struct SlaterResult {
  bool holds = false;
  Eigen::VectorXd witness;  // valid iff holds; satisfies A x < b strictly
  double margin = 0.0;
};

struct LIResult {
  bool holds = false;
  int rank = 0;
  int active_count = 0;
};

/// Outcome of testing the candidate set against the exact hull. Only two
/// verdicts can occur: the candidate hull always contains the exact one,
/// so either they are equal or the candidate set is strictly larger.
struct MangasarianCheck {
  bool equal = false;
  std::optional<CandidateHessian> witness;  // a candidate outside the hull
  double witness_gap = 0.0;                 // phase-1 gap of the witness
  int candidate_count = 0;                  // binary vectors enumerated
  int distinct_count = 0;                   // after deduplication
};

struct EvtushenkoCheck {
  bool plus_member = false;
  bool minus_member = false;
};

struct AnalysisReport {
  Eigen::VectorXd point;
  ActivityPartition partition;
  SlaterResult slater;
  LIResult li;
  std::vector<SignPattern> patterns;
  HessianHull hull;
  MangasarianCheck mangasarian;
  EvtushenkoCheck evtushenko;
};

/// Does some x satisfy A x < b componentwise? Decided by maximizing the
/// normalized slack margin over a box of radius 1 + max |b_i| / |A_i|.
SlaterResult check_slater(const LinearSystem& sys);

/// Linear independence of the active rows (|I0| <= n and full row rank,
/// via column-pivoted QR with a 1e-10 relative pivot threshold).
LIResult check_li(const LinearSystem& sys, const ActivityPartition& part);

/// All strict sign patterns on the active rows realizable by some
/// direction, found by depth-first search with prefix pruning (an
/// infeasible prefix cannot become feasible by adding rows). Zero rows are
/// skipped; results are sorted by pattern bits. Throws ActiveSetTooLarge
/// when more than max_active rows would need signs.
std::vector<SignPattern> enumerate_achievable_patterns(
    const LinearSystem& sys, const ActivityPartition& part,
    int max_active = kDefaultMaxActive);

/// The limiting Hessian of each pattern: A^T diag(v) A with v = 1 on
/// violated rows and on active rows signed '+'. Deduplicated at Frobenius
/// distance 1e-10.
HessianHull limiting_hessians(const LinearSystem& sys,
                              const ActivityPartition& part,
                              const std::vector<SignPattern>& patterns);

/// Extreme candidates of the interval set A^T diag((Ax-b)_*) A: every
/// binary diagonal that is 1 on violated rows, 0 on satisfied rows and
/// free on active rows.
std::vector<CandidateHessian> mangasarian_extremes(
    const LinearSystem& sys, const ActivityPartition& part,
    int max_active = kDefaultMaxActive);

/// Equality test candidate set vs exact hull. One inclusion always holds,
/// so it suffices to query each candidate extreme against the hull;
/// candidates are queried largest Frobenius norm first and the first
/// non-member becomes the witness.
MangasarianCheck verify_mangasarian_equality(
    const LinearSystem& sys, const ActivityPartition& part,
    const HessianHull& hull, int max_active = kDefaultMaxActive);

/// Membership of A^T D+ A and A^T D- A in the exact hull.
EvtushenkoCheck verify_evtushenko(const LinearSystem& sys,
                                  const ActivityPartition& part,
                                  const HessianHull& hull);

/// Full pipeline at one point: classification, Slater, linear
/// independence, pattern enumeration, hull, and both membership verdicts.
AnalysisReport analyze(const LinearSystem& sys, const Eigen::VectorXd& x,
                       int max_active = kDefaultMaxActive);

/// Upper bound on the number of full-dimensional cells of a central
/// arrangement of k hyperplanes in R^n: 2 * sum_{j<n} C(k-1, j).
unsigned long long max_central_cells(int k, int n);

}  // namespace genhess

#endif  // GENHESS_ANALYSIS_HPP
