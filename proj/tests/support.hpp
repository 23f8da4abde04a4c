// Shared test utilities: deterministic instance generators, the
// brute-force LP vertex oracle, and small comparison helpers. Everything
// here is independent of the library's LP/simplex path so it can serve as
// a cross-check.

#ifndef GENHESS_TESTS_SUPPORT_HPP
#define GENHESS_TESTS_SUPPORT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "genhess/analysis.hpp"
#include "genhess/linear_system.hpp"
#include "genhess/lp.hpp"

namespace genhess::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double lo,
                                     double hi) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(rng, lo, hi);
  return v;
}

// A random row with norm bounded away from zero.
inline Eigen::VectorXd random_row(std::mt19937_64& rng, int n) {
  while (true) {
    Eigen::VectorXd a = random_vector(rng, n, -1.0, 1.0);
    if (a.norm() >= 0.1) return a;
  }
}

inline bool matrices_near(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          double tol = 1e-9) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a - b).cwiseAbs().maxCoeff() <= tol;
}

// Does the matrix appear in the list, up to tol?
inline bool contains_matrix(const std::vector<Eigen::MatrixXd>& list,
                            const Eigen::MatrixXd& m, double tol = 1e-9) {
  return std::any_of(list.begin(), list.end(), [&](const Eigen::MatrixXd& e) {
    return matrices_near(e, m, tol);
  });
}

struct Instance {
  LinearSystem sys;
  Eigen::VectorXd query;
  int forced_active = 0;
};

// System satisfying the strict-interior condition by construction, with a
// query point at which forced_active rows hold with equality. The interior
// witness is x_hat; every forced row is flipped so x_hat stays strictly
// inside it.
inline Instance random_slater_instance(std::mt19937_64& rng, int max_m = 12,
                                       int max_n = 6, int max_active = 6) {
  const int n = uniform_int(rng, 1, max_n);
  const int m = uniform_int(rng, 1, max_m);
  const int k = uniform_int(rng, 0, std::min(m, max_active));

  while (true) {
    const Eigen::VectorXd x_hat = random_vector(rng, n, -1.0, 1.0);
    const Eigen::VectorXd x = random_vector(rng, n, -1.0, 1.0);
    if ((x - x_hat).norm() < 0.1) continue;

    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      for (int attempt = 0;; ++attempt) {
        if (attempt >= 100) {
          ok = false;
          break;
        }
        Eigen::VectorXd a = random_row(rng, n);
        if (i < k) {
          const double gap = a.dot(x_hat - x);
          if (std::abs(gap) < 1e-3 * a.norm()) continue;
          if (gap > 0.0) a = -a;
          A.row(i) = a.transpose();
          b[i] = A.row(i).dot(x);
          break;
        }
        const double slack = uniform(rng, 0.1, 1.1);
        const double rhs = a.dot(x_hat) + slack;
        // Keep unforced rows clear of the query point.
        if (std::abs(a.dot(x) - rhs) < 1e-3) continue;
        A.row(i) = a.transpose();
        b[i] = rhs;
        break;
      }
    }
    if (!ok) continue;
    return Instance{LinearSystem(A, b), x, k};
  }
}

// System whose active rows at the query point are linearly independent
// with smallest singular value bounded away from zero.
inline Instance random_li_instance(std::mt19937_64& rng, int max_m = 12,
                                   int max_n = 6) {
  const int n = uniform_int(rng, 1, max_n);
  const int k = uniform_int(rng, 0, n);
  const int m = uniform_int(rng, std::max(k, 1), max_m);

  while (true) {
    const Eigen::VectorXd x = random_vector(rng, n, -1.0, 1.0);
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);

    if (k > 0) {
      Eigen::MatrixXd active(k, n);
      bool good = false;
      for (int attempt = 0; attempt < 100 && !good; ++attempt) {
        for (int i = 0; i < k; ++i) active.row(i) = random_row(rng, n);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(active);
        good = svd.singularValues().minCoeff() >= 0.2;
      }
      if (!good) continue;
      A.topRows(k) = active;
      for (int i = 0; i < k; ++i) b[i] = A.row(i).dot(x);
    }
    for (int i = k; i < m; ++i) {
      const Eigen::VectorXd a = random_row(rng, n);
      A.row(i) = a.transpose();
      const double offset = uniform(rng, 0.1, 1.0);
      b[i] = a.dot(x) + (rng() % 2 == 0 ? offset : -offset);
    }
    return Instance{LinearSystem(A, b), x, k};
  }
}

// Generic system with a forced exactly-active set of the given size at the
// query point; the remaining rows land strictly on either side.
inline Instance random_forced_active_instance(std::mt19937_64& rng,
                                              int max_active = 4,
                                              int max_m = 10, int max_n = 5) {
  const int n = uniform_int(rng, 1, max_n);
  const int m = uniform_int(rng, 1, max_m);
  const int k = uniform_int(rng, 0, std::min(m, max_active));

  const Eigen::VectorXd x = random_vector(rng, n, -1.0, 1.0);
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd a = random_row(rng, n);
    A.row(i) = a.transpose();
    if (i < k) {
      b[i] = a.dot(x);
    } else {
      const double offset = uniform(rng, 0.1, 1.0);
      b[i] = a.dot(x) + (rng() % 2 == 0 ? offset : -offset);
    }
  }
  return Instance{LinearSystem(A, b), x, k};
}

// Exhaustive vertex-enumeration LP oracle: tries every choice of n rows
// active, solves the square system, keeps feasible candidates. Assumes the
// feasible set, if nonempty, is a polytope (callers add bounding rows), so
// an optimum exists at such a candidate. Equality rows are forced into
// every active set.
inline std::optional<double> brute_force_lp(const Eigen::VectorXd& c,
                                            const std::vector<LPRow>& rows,
                                            bool maximize) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  std::vector<int> eq_rows, ineq_rows;
  for (int i = 0; i < m; ++i) {
    (rows[i].rel == Relation::Eq ? eq_rows : ineq_rows).push_back(i);
  }
  const int need = n - static_cast<int>(eq_rows.size());
  if (need < 0) return std::nullopt;  // over-determined equality set

  std::optional<double> best;
  std::vector<int> pick(need);
  auto try_active_set = [&](const std::vector<int>& active) {
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) {
      M.row(r) = rows[active[r]].coefs.transpose();
      rhs[r] = rows[active[r]].rhs;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
    qr.setThreshold(1e-10);
    if (qr.rank() < n) return;
    const Eigen::VectorXd x = qr.solve(rhs);
    for (const LPRow& row : rows) {
      const double lhs = row.coefs.dot(x);
      const double tol = 1e-7 * (1.0 + std::abs(row.rhs));
      if (row.rel == Relation::Eq) {
        if (std::abs(lhs - row.rhs) > tol) return;
      } else if (lhs > row.rhs + tol) {
        return;
      }
    }
    const double obj = c.dot(x);
    if (!best || (maximize ? obj > *best : obj < *best)) best = obj;
  };

  // All size-`need` subsets of the inequality rows.
  std::vector<int> active(eq_rows);
  active.resize(n);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == need) {
      try_active_set(active);
      return;
    }
    for (int i = start; i < static_cast<int>(ineq_rows.size()); ++i) {
      active[eq_rows.size() + depth] = ineq_rows[i];
      self(self, i + 1, depth + 1);
    }
  };
  if (n == 0) return std::nullopt;
  rec(rec, 0, 0);
  return best;
}

// Number of achievable patterns can never exceed the cell count of a
// central arrangement of the nonzero active rows.
inline bool cell_bound_holds(const LinearSystem& sys,
                             const ActivityPartition& part,
                             size_t pattern_count) {
  int k = 0;
  for (int i : part.active) {
    if (!sys.is_zero_row(i)) ++k;
  }
  return pattern_count <= max_central_cells(k, static_cast<int>(sys.cols()));
}

}  // namespace genhess::testing

#endif  // GENHESS_TESTS_SUPPORT_HPP
