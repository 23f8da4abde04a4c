#include "genhess/builtin.hpp"

#include <cmath>
#include <sstream>

#include "genhess/analysis.hpp"

namespace genhess::builtin {

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

std::string describe(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? "," : "") << m(i, j);
    }
  }
  os << "]";
  return os.str();
}

class Checker {
 public:
  void expect(const std::string& name, bool ok, const std::string& detail) {
    results_.push_back({name, ok, ok ? "" : detail});
  }

  void expect_near(const std::string& name, double actual, double expected,
                   double tol = 1e-9) {
    std::ostringstream os;
    os << "expected " << expected << ", got " << actual;
    expect(name, std::abs(actual - expected) <= tol, os.str());
  }

  void expect_matrix(const std::string& name, const Eigen::MatrixXd& actual,
                     const Eigen::MatrixXd& expected, double tol = 1e-9) {
    const bool ok = actual.rows() == expected.rows() &&
                    actual.cols() == expected.cols() &&
                    (actual - expected).cwiseAbs().maxCoeff() <= tol;
    expect(name, ok,
           "expected " + describe(expected) + ", got " + describe(actual));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

}  // namespace

LinearSystem opposite_rows() {
  Eigen::MatrixXd A(2, 2);
  A << 1, 0, -1, 0;
  return LinearSystem(A, Eigen::VectorXd::Zero(2));
}

LinearSystem dependent_triple() {
  Eigen::MatrixXd A(3, 2);
  A << 1, 0, 0, 1, 1, 1;
  return LinearSystem(A, Eigen::VectorXd::Zero(3));
}

std::vector<CheckResult> run_builtin_checks(bool corrupt_expected) {
  Checker check;

  {
    const LinearSystem sys = opposite_rows();
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(2);

    Eigen::VectorXd p(2);
    p << 3, 7;
    // One corrupted expectation exercises the FAIL reporting path.
    check.expect_near("opposite-rows: f(3,7)", eval_f(sys, p),
                      corrupt_expected ? 5.25 : 4.5);
    Eigen::VectorXd expected_grad(2);
    expected_grad << 3, 0;
    check.expect_matrix("opposite-rows: grad(3,7)", eval_grad(sys, p),
                        expected_grad);

    const AnalysisReport report = analyze(sys, origin);
    check.expect("opposite-rows: both rows active at origin",
                 report.partition.active == std::vector<int>{0, 1} &&
                     report.partition.violated.empty() &&
                     report.partition.satisfied.empty(),
                 "wrong partition");
    check.expect("opposite-rows: no interior point", !report.slater.holds,
                 "Slater check should fail");
    check.expect("opposite-rows: active rows dependent (rank 1 of 2)",
                 !report.li.holds && report.li.rank == 1 &&
                     report.li.active_count == 2,
                 "wrong rank result");
    check.expect_near("opposite-rows: achievable patterns",
                      static_cast<double>(report.patterns.size()), 2.0, 0.0);
    check.expect_near("opposite-rows: hull extreme count",
                      static_cast<double>(report.hull.extremes.size()), 1.0,
                      0.0);
    check.expect_matrix("opposite-rows: hull extreme",
                        report.hull.extremes[0].matrix, mat2(1, 0, 0, 0));

    const ActivityPartition& part = report.partition;
    check.expect_matrix("opposite-rows: D+ element",
                        d_matrix(sys, part, DSide::Plus).matrix,
                        mat2(0, 0, 0, 0));
    check.expect_matrix("opposite-rows: D- element",
                        d_matrix(sys, part, DSide::Minus).matrix,
                        mat2(2, 0, 0, 0));
    check.expect("opposite-rows: candidate set strictly larger",
                 !report.mangasarian.equal, "expected a strict inclusion");
    check.expect_matrix("opposite-rows: witness outside the hull",
                        report.mangasarian.witness
                            ? report.mangasarian.witness->matrix
                            : Eigen::MatrixXd::Zero(2, 2),
                        mat2(2, 0, 0, 0));
    const auto hull_mats = report.hull.extreme_matrices();
    check.expect("opposite-rows: zero matrix outside the hull",
                 !hull_membership(hull_mats, Eigen::MatrixXd::Zero(2, 2))
                      .member,
                 "zero matrix should not be a member");
    check.expect("opposite-rows: D+ and D- both outside the hull",
                 !report.evtushenko.plus_member &&
                     !report.evtushenko.minus_member,
                 "membership flags should both be false");
  }

  {
    const LinearSystem sys = dependent_triple();
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(2);

    Eigen::VectorXd p(2);
    p << 1, 1;
    check.expect_near("dependent-triple: f(1,1)", eval_f(sys, p), 3.0);
    p << -1, 2;
    Eigen::VectorXd expected_grad(2);
    expected_grad << 1, 3;
    check.expect_matrix("dependent-triple: grad(-1,2)", eval_grad(sys, p),
                        expected_grad);

    const AnalysisReport report = analyze(sys, origin);
    check.expect("dependent-triple: interior point exists",
                 report.slater.holds &&
                     ((sys.A() * report.slater.witness - sys.b()).array() < 0)
                         .all(),
                 "Slater witness missing or not strict");
    check.expect("dependent-triple: active rows dependent (rank 2 of 3)",
                 !report.li.holds && report.li.rank == 2 &&
                     report.li.active_count == 3,
                 "wrong rank result");
    check.expect_near("dependent-triple: achievable patterns",
                      static_cast<double>(report.patterns.size()), 6.0, 0.0);

    const std::vector<Eigen::MatrixXd> expected_extremes = {
        mat2(0, 0, 0, 0), mat2(0, 0, 0, 1), mat2(1, 1, 1, 2),
        mat2(1, 0, 0, 0), mat2(2, 1, 1, 1), mat2(2, 1, 1, 2)};
    check.expect_near("dependent-triple: hull extreme count",
                      static_cast<double>(report.hull.extremes.size()), 6.0,
                      0.0);
    bool extremes_match = report.hull.extremes.size() == 6;
    for (size_t i = 0; extremes_match && i < 6; ++i) {
      extremes_match = (report.hull.extremes[i].matrix - expected_extremes[i])
                           .cwiseAbs()
                           .maxCoeff() <= 1e-9;
    }
    check.expect("dependent-triple: hull extremes match the known six",
                 extremes_match, "extreme list differs");

    Eigen::VectorXi v(3);
    v << 0, 0, 1;
    const Eigen::MatrixXd odd_candidate = candidate_from_binary(sys, v).matrix;
    check.expect_matrix("dependent-triple: candidate for diag(0,0,1)",
                        odd_candidate, mat2(1, 1, 1, 1));
    check.expect("dependent-triple: that candidate is outside the hull",
                 !hull_membership(report.hull.extreme_matrices(),
                                  odd_candidate)
                      .member,
                 "candidate should not be a member");
    check.expect("dependent-triple: candidate set strictly larger",
                 !report.mangasarian.equal, "expected a strict inclusion");
    check.expect_matrix("dependent-triple: witness outside the hull",
                        report.mangasarian.witness
                            ? report.mangasarian.witness->matrix
                            : Eigen::MatrixXd::Zero(2, 2),
                        mat2(1, 1, 1, 1));
    check.expect("dependent-triple: D+ and D- both inside the hull",
                 report.evtushenko.plus_member &&
                     report.evtushenko.minus_member,
                 "membership flags should both be true");

    Eigen::VectorXd interior(2);
    interior << -1, -1;
    const AnalysisReport inner = analyze(sys, interior);
    check.expect("dependent-triple: interior analysis is exact",
                 inner.partition.active.empty() && inner.mangasarian.equal &&
                     inner.evtushenko.plus_member &&
                     inner.evtushenko.minus_member,
                 "interior point should give equality");
  }

  return check.take();
}

}  // namespace genhess::builtin
