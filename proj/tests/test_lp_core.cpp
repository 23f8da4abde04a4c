#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "genhess/builtin.hpp"
#include "genhess/lp.hpp"
#include "support.hpp"

using namespace genhess;
using namespace genhess::testing;

namespace {

LPRow row(std::initializer_list<double> coefs, Relation rel, double rhs) {
  LPRow r;
  r.coefs = Eigen::VectorXd(static_cast<Eigen::Index>(coefs.size()));
  Eigen::Index i = 0;
  for (double c : coefs) r.coefs[i++] = c;
  r.rel = rel;
  r.rhs = rhs;
  return r;
}

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("one-variable corner cases") {
  // max t s.t. t <= 1
  auto out = solve_lp(vec({1}), {row({1}, Relation::LessEq, 1)}, true);
  CHECK(out.status == LPStatus::Optimal);
  CHECK(out.objective == doctest::Approx(1.0).epsilon(1e-10));

  // empty interval 2 <= t <= 1
  out = solve_lp(vec({1}),
                 {row({1}, Relation::LessEq, 1), row({-1}, Relation::LessEq, -2)},
                 true);
  CHECK(out.status == LPStatus::Infeasible);
  CHECK(out.infeasibility > 1e-3);

  // no upper bound
  out = solve_lp(vec({1}), {row({-1}, Relation::LessEq, 0)}, true);
  CHECK(out.status == LPStatus::Unbounded);
}

TEST_CASE("box corner and equality rows") {
  auto out = solve_lp(vec({1, 1}),
                      {row({1, 0}, Relation::LessEq, 1),
                       row({0, 1}, Relation::LessEq, 1)},
                      true);
  CHECK(out.status == LPStatus::Optimal);
  CHECK(out.objective == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(matrices_near(out.primal, vec({1, 1}), 1e-8));

  out = solve_lp(vec({1, 1}),
                 {row({1, 1}, Relation::Eq, 1),
                  row({1, 0}, Relation::LessEq, 0.3)},
                 true);
  CHECK(out.status == LPStatus::Optimal);
  CHECK(out.objective == doctest::Approx(1.0).epsilon(1e-10));

  // Equality system with a redundant row.
  out = solve_lp(vec({1, 0}),
                 {row({1, 1}, Relation::Eq, 2),
                  row({2, 2}, Relation::Eq, 4),
                  row({1, -1}, Relation::Eq, 0)},
                 false);
  CHECK(out.status == LPStatus::Optimal);
  CHECK(out.objective == doctest::Approx(1.0).epsilon(1e-9));

  // Inconsistent equalities.
  out = solve_lp(vec({1, 0}),
                 {row({1, 1}, Relation::Eq, 2),
                  row({1, 1}, Relation::Eq, 3)},
                 false);
  CHECK(out.status == LPStatus::Infeasible);
}

TEST_CASE("degenerate pivoting terminates") {
  // Classic cycling-prone data; Bland's rule must kick in and finish.
  auto out = solve_lp(
      vec({-0.75, 150, -0.02, 6}),
      {row({0.25, -60, -0.04, 9}, Relation::LessEq, 0),
       row({0.5, -90, -0.02, 3}, Relation::LessEq, 0),
       row({0, 0, 1, 0}, Relation::LessEq, 1)},
      false, /*var_nonneg=*/true);
  CHECK(out.status == LPStatus::Optimal);
  CHECK(out.objective == doctest::Approx(-0.05).epsilon(1e-8));
}

TEST_CASE("rejects malformed input") {
  CHECK_THROWS_AS(solve_lp(vec({1, 2}), {row({1}, Relation::LessEq, 1)}, true),
                  std::invalid_argument);
  LPRow bad = row({1}, Relation::LessEq,
                  std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(solve_lp(vec({1}), {bad}, true), std::invalid_argument);
}

TEST_CASE("simplex agrees with the vertex-enumeration oracle") {
  std::mt19937_64 rng(101);
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = uniform_int(rng, 1, 8);
    std::vector<LPRow> rows;
    // Simplex-shaped bounding rows keep the region a polytope.
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[j] = -1.0;
      rows.push_back({e, Relation::LessEq, uniform(rng, 0.5, 2.0)});
    }
    rows.push_back(
        {Eigen::VectorXd::Ones(n), Relation::LessEq, uniform(rng, 1.0, 4.0)});
    const int extra = uniform_int(rng, 0, std::max(0, 11 - n - 1));
    for (int i = 0; i < extra; ++i) {
      rows.push_back({random_vector(rng, n, -1, 1), Relation::LessEq,
                      uniform(rng, -0.5, 2.0)});
    }
    const Eigen::VectorXd c = random_vector(rng, n, -1, 1);
    const bool maximize = rng() % 2 == 0;

    const LPOutcome got = solve_lp(c, rows, maximize);
    const std::optional<double> want = brute_force_lp(c, rows, maximize);
    if (!want) {
      CHECK(got.status == LPStatus::Infeasible);
      continue;
    }
    REQUIRE(got.status == LPStatus::Optimal);
    CHECK(got.objective ==
          doctest::Approx(*want).epsilon(1e-7).scale(1.0 + std::abs(*want)));
    // The returned point satisfies every row within 1e-8 after row
    // normalization.
    for (const LPRow& r : rows) {
      const double scale = std::max(1.0, r.coefs.cwiseAbs().maxCoeff());
      CHECK(r.coefs.dot(got.primal) - r.rhs <= 1e-8 * scale);
    }
    ++compared;
  }
  CHECK(compared > 50);
}

TEST_CASE("oracle agreement with equality rows and degenerate corners") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = uniform_int(rng, 2, 5);
    const Eigen::VectorXd x0 = random_vector(rng, n, -0.5, 0.5);
    std::vector<LPRow> rows;
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[j] = -1.0;
      rows.push_back({e, Relation::LessEq, uniform(rng, 1.0, 2.0)});
    }
    rows.push_back({Eigen::VectorXd::Ones(n), Relation::LessEq,
                    uniform(rng, 2.0, 4.0)});
    // An equality row through x0 keeps the system feasible but forces the
    // phase-1 machinery and artificial drive-out to do real work.
    const int n_eq = uniform_int(rng, 0, std::min(2, n - 1));
    for (int e = 0; e < n_eq; ++e) {
      const Eigen::VectorXd a = random_row(rng, n);
      rows.push_back({a, Relation::Eq, a.dot(x0)});
    }
    // A duplicated inequality creates degenerate vertices.
    if (trial % 3 == 0) {
      rows.push_back(rows[uniform_int(rng, 0, n)]);
    }
    const Eigen::VectorXd c = random_vector(rng, n, -1, 1);

    const LPOutcome got = solve_lp(c, rows, /*maximize=*/true);
    const auto want = brute_force_lp(c, rows, /*maximize=*/true);
    REQUIRE(want.has_value());
    REQUIRE(got.status == LPStatus::Optimal);
    CHECK(got.objective ==
          doctest::Approx(*want).epsilon(1e-7).scale(1.0 + std::abs(*want)));
  }
}

TEST_CASE("strict feasibility on hand-checked sign systems") {
  const Eigen::VectorXd e1 = vec({1, 0});
  const Eigen::VectorXd e2 = vec({0, 1});

  // Opposite strict signs on the same direction: empty.
  CHECK_FALSE(strict_feasibility({{e1, +1}, {e1, -1}}).feasible);

  // x1 < 0 and x2 < 0 force x1 + x2 < 0.
  CHECK_FALSE(
      strict_feasibility({{e1, -1}, {e2, -1}, {vec({1, 1}), +1}}).feasible);

  const StrictFeasibility feas = strict_feasibility({{e1, +1}, {e2, -1}});
  REQUIRE(feas.feasible);
  CHECK(feas.margin >= 1.0 / std::sqrt(2.0));
  CHECK(feas.witness[0] > 0.0);
  CHECK(feas.witness[1] < 0.0);

  // No constraints at all: vacuously feasible.
  CHECK(strict_feasibility({}).feasible);

  CHECK_THROWS_AS(strict_feasibility({{vec({0, 0}), +1}}),
                  std::invalid_argument);
}

TEST_CASE("strict feasibility is sign-symmetric") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = uniform_int(rng, 1, 4);
    const int k = uniform_int(rng, 1, 5);
    std::vector<std::pair<Eigen::VectorXd, int>> rows, flipped;
    for (int i = 0; i < k; ++i) {
      const Eigen::VectorXd a = random_row(rng, n);
      const int sg = rng() % 2 == 0 ? +1 : -1;
      rows.emplace_back(a, sg);
      flipped.emplace_back(a, -sg);
    }
    const StrictFeasibility fwd = strict_feasibility(rows);
    const StrictFeasibility rev = strict_feasibility(flipped);
    CHECK(fwd.feasible == rev.feasible);
    if (fwd.feasible) {
      CHECK(fwd.margin == doctest::Approx(rev.margin).epsilon(1e-7));
      // Negating a witness flips every strict inequality.
      for (const auto& [a, sg] : flipped) {
        CHECK(sg * a.normalized().dot(-fwd.witness) >= kStrictTol - 1e-9);
      }
    }
  }
}

TEST_CASE("hull membership certificates") {
  Eigen::MatrixXd self(2, 2);
  self << 1, 2, 2, 5;
  auto got = hull_membership({self}, self);
  REQUIRE(got.member);
  CHECK(got.weights.size() == 1);
  CHECK(got.weights[0] == doctest::Approx(1.0).epsilon(1e-9));

  // The known six-extreme hull rejects the diag(0,0,1) candidate...
  const LinearSystem triple = builtin::dependent_triple();
  const AnalysisReport report =
      analyze(triple, Eigen::VectorXd::Zero(2));
  const std::vector<Eigen::MatrixXd> six = report.hull.extreme_matrices();
  REQUIRE(six.size() == 6);
  Eigen::MatrixXd ones(2, 2);
  ones << 1, 1, 1, 1;
  const auto reject = hull_membership(six, ones);
  CHECK_FALSE(reject.member);
  CHECK(reject.phase1_gap > 1e-7 * (1.0 + ones.norm()));

  // ...and accepts an explicit midpoint of two of its extremes.
  Eigen::MatrixXd mid(2, 2);
  mid << 1.5, 1, 1, 1.5;
  const auto accept = hull_membership(six, mid);
  REQUIRE(accept.member);
  Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(2, 2);
  for (int k = 0; k < 6; ++k) recon += accept.weights[k] * six[k];
  CHECK((recon - mid).norm() <= 1e-7 * (1.0 + mid.norm()));
  CHECK(accept.weights.minCoeff() >= -1e-10);
  CHECK(accept.weights.sum() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("hull membership validates input") {
  Eigen::MatrixXd sym = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(hull_membership({}, sym), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(hull_membership({sym}, asym), std::invalid_argument);
  CHECK_THROWS_AS(hull_membership({Eigen::MatrixXd::Identity(3, 3)}, sym),
                  std::invalid_argument);
}

TEST_CASE("random convex combinations are recovered as members") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 1, 4);
    const int K = uniform_int(rng, 1, 6);
    std::vector<Eigen::MatrixXd> extremes;
    for (int k = 0; k < K; ++k) {
      Eigen::MatrixXd B(n, n);
      for (int i = 0; i < n; ++i) B.row(i) = random_vector(rng, n, -1, 1);
      extremes.push_back(B + B.transpose());
    }
    // Simplex-uniform weights via normalized exponentials.
    Eigen::VectorXd w(K);
    for (int k = 0; k < K; ++k) w[k] = -std::log(uniform(rng, 1e-12, 1.0));
    w /= w.sum();
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < K; ++k) target += w[k] * extremes[k];

    const auto got = hull_membership(extremes, target);
    REQUIRE(got.member);
    Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < K; ++k) recon += got.weights[k] * extremes[k];
    CHECK((recon - target).norm() <= 1e-7 * (1.0 + target.norm()));
  }
}

TEST_CASE("hull membership is invariant under a common positive rescaling") {
  const LinearSystem triple = builtin::dependent_triple();
  const AnalysisReport report = analyze(triple, Eigen::VectorXd::Zero(2));
  const std::vector<Eigen::MatrixXd> six = report.hull.extreme_matrices();
  Eigen::MatrixXd outside(2, 2);
  outside << 1, 1, 1, 1;
  Eigen::MatrixXd inside(2, 2);
  inside << 1.5, 1, 1, 1.5;

  for (double c : {1e-3, 1.0, 1e3}) {
    std::vector<Eigen::MatrixXd> scaled;
    for (const auto& E : six) scaled.push_back(c * E);
    CHECK_FALSE(hull_membership(scaled, (c * outside).eval()).member);
    CHECK(hull_membership(scaled, (c * inside).eval()).member);
  }
}
