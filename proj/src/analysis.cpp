#include "genhess/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace genhess {

namespace {

constexpr double kDedupTol = 1e-10;

std::string too_large_message(int active_count, int limit) {
  std::ostringstream msg;
  msg << "active set of size " << active_count
      << " exceeds the enumeration cap " << limit;
  return msg.str();
}

std::vector<int> nonzero_active(const LinearSystem& sys,
                                const ActivityPartition& part) {
  std::vector<int> idx;
  for (int i : part.active) {
    if (!sys.is_zero_row(i)) idx.push_back(i);
  }
  return idx;
}

bool matrices_close(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                    double tol) {
  return (a - b).norm() <= tol;
}

}  // namespace

ActiveSetTooLarge::ActiveSetTooLarge(int active_count_, int limit_)
    : std::runtime_error(too_large_message(active_count_, limit_)),
      active_count(active_count_),
      limit(limit_) {}

std::string SignPattern::to_string() const {
  std::string s;
  s.reserve(signs.size());
  for (int sg : signs) s.push_back(sg > 0 ? '+' : '-');
  return s;
}

std::vector<Eigen::MatrixXd> HessianHull::extreme_matrices() const {
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(extremes.size());
  for (const auto& e : extremes) mats.push_back(e.matrix);
  return mats;
}

SlaterResult check_slater(const LinearSystem& sys) {
  SlaterResult result;
  const int m = static_cast<int>(sys.rows());
  const int n = static_cast<int>(sys.cols());

  // A zero row demands 0 < b_i; it either fails outright or is vacuous.
  std::vector<int> live;
  double zero_row_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    if (sys.is_zero_row(i)) {
      if (sys.b()[i] <= 0.0) return result;  // Fails
      zero_row_margin = std::min(zero_row_margin, sys.b()[i]);
    } else {
      live.push_back(i);
    }
  }
  if (live.empty()) {
    result.holds = true;
    result.witness = Eigen::VectorXd::Zero(n);
    result.margin = zero_row_margin;
    return result;
  }

  double box = 1.0;
  for (int i : live) {
    box = std::max(box, 1.0 + std::abs(sys.b()[i]) / sys.row_norm(i));
  }

  // Variables (x, t): maximize t with <A_i/|A_i|, x> + t <= b_i/|A_i| and
  // |x|_inf <= box. t* > 0 iff the polyhedron has interior within the box.
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c[n] = 1.0;
  std::vector<LPRow> rows;
  rows.reserve(live.size() + 2 * n);
  for (int i : live) {
    LPRow row;
    row.coefs = Eigen::VectorXd::Zero(n + 1);
    row.coefs.head(n) = sys.A().row(i).transpose() / sys.row_norm(i);
    row.coefs[n] = 1.0;
    row.rhs = sys.b()[i] / sys.row_norm(i);
    rows.push_back(std::move(row));
  }
  for (int j = 0; j < n; ++j) {
    LPRow up, dn;
    up.coefs = Eigen::VectorXd::Zero(n + 1);
    up.coefs[j] = 1.0;
    up.rhs = box;
    dn.coefs = Eigen::VectorXd::Zero(n + 1);
    dn.coefs[j] = -1.0;
    dn.rhs = box;
    rows.push_back(std::move(up));
    rows.push_back(std::move(dn));
  }

  const LPOutcome lp = solve_lp(c, rows, /*maximize=*/true);
  if (lp.status == LPStatus::Optimal && lp.objective >= kStrictTol) {
    result.holds = true;
    result.witness = lp.primal.head(n);
    result.margin = std::min(lp.objective, zero_row_margin);
  }
  return result;
}

LIResult check_li(const LinearSystem& sys, const ActivityPartition& part) {
  LIResult result;
  result.active_count = static_cast<int>(part.active.size());
  if (part.active.empty()) {
    result.holds = true;
    return result;
  }
  Eigen::MatrixXd sub(part.active.size(), sys.cols());
  for (size_t k = 0; k < part.active.size(); ++k) {
    sub.row(k) = sys.A().row(part.active[k]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
  qr.setThreshold(1e-10);
  result.rank = static_cast<int>(qr.rank());
  result.holds = result.active_count <= sys.cols() &&
                 result.rank == result.active_count;
  return result;
}

std::vector<SignPattern> enumerate_achievable_patterns(
    const LinearSystem& sys, const ActivityPartition& part, int max_active) {
  const std::vector<int> idx = nonzero_active(sys, part);
  const int k = static_cast<int>(idx.size());
  if (k > max_active) throw ActiveSetTooLarge(k, max_active);

  std::vector<SignPattern> patterns;
  if (k == 0) {
    SignPattern empty;
    empty.witness = Eigen::VectorXd::Zero(sys.cols());
    empty.margin = std::numeric_limits<double>::infinity();
    patterns.push_back(std::move(empty));
    return patterns;
  }

  // Depth-first over sign prefixes in ascending index order. A prefix that
  // admits no strict direction cannot be rescued by assigning more signs,
  // so the whole subtree is pruned.
  std::vector<std::pair<Eigen::VectorXd, int>> prefix;
  prefix.reserve(k);
  std::vector<int> signs(k, 0);

  auto dfs = [&](auto&& self, int depth) -> void {
    for (int sg : {-1, +1}) {
      prefix.emplace_back(sys.A().row(idx[depth]).transpose(), sg);
      const StrictFeasibility feas = strict_feasibility(prefix);
      if (feas.feasible) {
        signs[depth] = sg;
        if (depth + 1 == k) {
          SignPattern pat;
          pat.indices = idx;
          pat.signs = signs;
          pat.witness = feas.witness;
          pat.margin = feas.margin;
          patterns.push_back(std::move(pat));
        } else {
          self(self, depth + 1);
        }
      }
      prefix.pop_back();
    }
  };
  dfs(dfs, 0);

  std::sort(patterns.begin(), patterns.end(),
            [](const SignPattern& a, const SignPattern& b) {
              return a.signs < b.signs;
            });
  return patterns;
}

HessianHull limiting_hessians(const LinearSystem& sys,
                              const ActivityPartition& part,
                              const std::vector<SignPattern>& patterns) {
  HessianHull hull;
  hull.point = part.point;
  hull.base_pattern = Eigen::VectorXi::Zero(sys.rows());
  for (int i : part.violated) hull.base_pattern[i] = 1;

  for (const SignPattern& pat : patterns) {
    Eigen::VectorXi v = hull.base_pattern;
    for (size_t k = 0; k < pat.indices.size(); ++k) {
      if (pat.signs[k] > 0) v[pat.indices[k]] = 1;
    }
    CandidateHessian cand = candidate_from_binary(sys, v);
    cand.label.kind = HessianLabelKind::Pattern;
    cand.label.pattern = pat.to_string();
    const bool seen = std::any_of(
        hull.extremes.begin(), hull.extremes.end(),
        [&](const CandidateHessian& e) {
          return matrices_close(e.matrix, cand.matrix, kDedupTol);
        });
    if (!seen) hull.extremes.push_back(std::move(cand));
  }
  return hull;
}

std::vector<CandidateHessian> mangasarian_extremes(
    const LinearSystem& sys, const ActivityPartition& part, int max_active) {
  const std::vector<int> idx = nonzero_active(sys, part);
  const int k = static_cast<int>(idx.size());
  if (k > max_active) throw ActiveSetTooLarge(k, max_active);

  Eigen::VectorXi base = Eigen::VectorXi::Zero(sys.rows());
  for (int i : part.violated) base[i] = 1;

  std::vector<CandidateHessian> out;
  out.reserve(1ull << k);
  for (unsigned long long bits = 0; bits < (1ull << k); ++bits) {
    Eigen::VectorXi v = base;
    for (int j = 0; j < k; ++j) {
      // Index 0 is the most significant bit, so candidates come out in
      // ascending binary order over the active rows.
      if (bits & (1ull << (k - 1 - j))) v[idx[j]] = 1;
    }
    out.push_back(candidate_from_binary(sys, v));
  }
  return out;
}

MangasarianCheck verify_mangasarian_equality(const LinearSystem& sys,
                                             const ActivityPartition& part,
                                             const HessianHull& hull,
                                             int max_active) {
  MangasarianCheck check;
  std::vector<CandidateHessian> candidates =
      mangasarian_extremes(sys, part, max_active);
  check.candidate_count = static_cast<int>(candidates.size());

  std::vector<CandidateHessian> distinct;
  for (auto& cand : candidates) {
    const bool seen =
        std::any_of(distinct.begin(), distinct.end(),
                    [&](const CandidateHessian& e) {
                      return matrices_close(e.matrix, cand.matrix, kDedupTol);
                    });
    if (!seen) distinct.push_back(std::move(cand));
  }
  check.distinct_count = static_cast<int>(distinct.size());

  // Query the extremal candidates first: interior ones are the likely
  // members, so a strict inclusion surfaces its largest witness.
  std::sort(distinct.begin(), distinct.end(),
            [](const CandidateHessian& a, const CandidateHessian& b) {
              const double na = a.matrix.norm();
              const double nb = b.matrix.norm();
              if (na != nb) return na > nb;
              return std::lexicographical_compare(
                  a.matrix.data(), a.matrix.data() + a.matrix.size(),
                  b.matrix.data(), b.matrix.data() + b.matrix.size());
            });

  const std::vector<Eigen::MatrixXd> hull_mats = hull.extreme_matrices();
  for (auto& cand : distinct) {
    const HullMembership mem = hull_membership(hull_mats, cand.matrix);
    if (!mem.member) {
      check.equal = false;
      check.witness = std::move(cand);
      check.witness_gap = mem.phase1_gap;
      return check;
    }
  }
  check.equal = true;
  return check;
}

EvtushenkoCheck verify_evtushenko(const LinearSystem& sys,
                                  const ActivityPartition& part,
                                  const HessianHull& hull) {
  const std::vector<Eigen::MatrixXd> hull_mats = hull.extreme_matrices();
  EvtushenkoCheck check;
  check.plus_member =
      hull_membership(hull_mats, d_matrix(sys, part, DSide::Plus).matrix)
          .member;
  check.minus_member =
      hull_membership(hull_mats, d_matrix(sys, part, DSide::Minus).matrix)
          .member;
  return check;
}

AnalysisReport analyze(const LinearSystem& sys, const Eigen::VectorXd& x,
                       int max_active) {
  AnalysisReport report;
  report.point = x;
  report.partition = classify_indices(sys, x);
  report.slater = check_slater(sys);
  report.li = check_li(sys, report.partition);
  report.patterns =
      enumerate_achievable_patterns(sys, report.partition, max_active);
  report.hull = limiting_hessians(sys, report.partition, report.patterns);
  report.mangasarian =
      verify_mangasarian_equality(sys, report.partition, report.hull,
                                  max_active);
  report.evtushenko = verify_evtushenko(sys, report.partition, report.hull);
  return report;
}

unsigned long long max_central_cells(int k, int n) {
  if (k <= 0) return 1;
  unsigned long long sum = 0;
  for (int j = 0; j < n && j <= k - 1; ++j) {
    // C(k-1, j), exact for the k <= ~60 range this library works in.
    unsigned long long binom = 1;
    for (int t = 0; t < j; ++t) binom = binom * (k - 1 - t) / (t + 1);
    sum += binom;
  }
  return 2 * sum;
}

}  // namespace genhess
