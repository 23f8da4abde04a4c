// Command-line front end: analyze a problem file at a point, replay the
// built-in example systems, sample finite-difference Hessians, or run the
// generalized Newton solver. stdout carries the report, stderr diagnostics.
//
// Exit codes: 0 = report produced (any verdict), 1 = a built-in check
// failed, 2 = input error, 3 = structural refusal (active set or radius
// too large).

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "genhess/analysis.hpp"
#include "genhess/builtin.hpp"
#include "genhess/newton.hpp"
#include "genhess/problem_io.hpp"
#include "genhess/report.hpp"
#include "genhess/sampling.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitRefused = 3;

struct CommonArgs {
  std::string path;
  std::string point;
  std::optional<double> eps_active;
  int max_active = genhess::kDefaultMaxActive;
  std::string output = "text";
};

int run_analyze(const CommonArgs& args) {
  const genhess::ProblemFile problem = genhess::load_problem(args.path);
  const genhess::LinearSystem sys = problem.make_system(args.eps_active);
  const Eigen::VectorXd x = genhess::resolve_point(problem, args.point);
  const genhess::AnalysisReport report =
      genhess::analyze(sys, x, args.max_active);
  if (args.output == "structured") {
    std::cout << genhess::analysis_to_json(sys, report).dump(2) << "\n";
  } else {
    std::cout << genhess::analysis_to_text(sys, report);
  }
  return kExitOk;
}

int run_examples(bool corrupt) {
  const auto checks = genhess::builtin::run_builtin_checks(corrupt);
  int failures = 0;
  for (const auto& c : checks) {
    if (c.pass) {
      std::cout << "PASS  " << c.name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL  " << c.name << ": " << c.detail << "\n";
    }
  }
  std::cout << checks.size() - failures << "/" << checks.size()
            << " checks passed\n";
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

int run_sample(const CommonArgs& args, double radius, int count,
               uint64_t seed) {
  const genhess::ProblemFile problem = genhess::load_problem(args.path);
  const genhess::LinearSystem sys = problem.make_system(args.eps_active);
  const Eigen::VectorXd x = genhess::resolve_point(problem, args.point);
  const genhess::SampleBatch batch = genhess::sample_limiting_hessians(
      sys, x, radius, count, seed, args.max_active);
  if (args.output == "structured") {
    std::cout << genhess::batch_to_json(sys, batch).dump(2) << "\n";
  } else {
    std::cout << genhess::batch_to_text(sys, batch);
  }
  return kExitOk;
}

int run_solve(const CommonArgs& args, const std::string& x0_spec,
              const genhess::NewtonOptions& opts) {
  const genhess::ProblemFile problem = genhess::load_problem(args.path);
  const genhess::LinearSystem sys = problem.make_system(args.eps_active);
  const Eigen::VectorXd x0 = genhess::resolve_point(problem, x0_spec);
  const genhess::SolveTrace trace = genhess::newton_solve(sys, x0, opts);
  if (args.output == "structured") {
    std::cout << genhess::trace_to_json(sys, trace).dump(2) << "\n";
  } else {
    std::cout << genhess::trace_to_text(sys, trace);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Clarke generalized Hessians of 0.5*|(Ax-b)+|^2"};
  app.require_subcommand(1);

  CommonArgs args;
  genhess::NewtonOptions newton_opts;
  double radius = 0.1;
  int count = 100;
  uint64_t seed = 0;
  std::string x0_spec;
  bool corrupt = false;

  auto add_common = [&](CLI::App* cmd, bool needs_point) {
    cmd->add_option("path", args.path, "problem file (JSON)")->required();
    if (needs_point) {
      cmd->add_option("--point", args.point,
                      "named point from the file or inline \"(v1,v2,...)\"")
          ->required();
    }
    cmd->add_option("--eps-active", args.eps_active,
                    "activity tolerance override");
    cmd->add_option("--max-active", args.max_active,
                    "cap on active rows for pattern enumeration");
    cmd->add_option("--output", args.output, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
  };

  CLI::App* analyze =
      app.add_subcommand("analyze", "full generalized-Hessian analysis at a point");
  add_common(analyze, true);

  CLI::App* examples = app.add_subcommand(
      "examples", "replay the built-in example systems against known values");
  examples->add_flag("--corrupt-expected", corrupt,
                     "corrupt one expected value (self-test of FAIL reporting)")
      ->group("");

  CLI::App* sample = app.add_subcommand(
      "sample", "finite-difference Hessian sampling near a point");
  add_common(sample, true);
  sample->add_option("--radius", radius, "sampling ball radius (inf-norm)");
  sample->add_option("--count", count, "number of sample points");
  sample->add_option("--seed", seed, "PRNG seed");

  CLI::App* solve = app.add_subcommand(
      "solve", "regularized generalized Newton iteration minimizing f");
  add_common(solve, false);
  solve->add_option("--x0", x0_spec, "start point (named or inline)")
      ->required();
  solve->add_option("--delta", newton_opts.delta, "regularization");
  solve->add_option("--tol", newton_opts.grad_tol, "gradient norm tolerance");
  solve->add_option("--max-iter", newton_opts.max_iter, "iteration cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(args);
    if (examples->parsed()) return run_examples(corrupt);
    if (sample->parsed()) return run_sample(args, radius, count, seed);
    if (solve->parsed()) return run_solve(args, x0_spec, newton_opts);
  } catch (const genhess::ActiveSetTooLarge& e) {
    std::cerr << "error: " << e.what()
              << "; use the sample subcommand or raise --max-active\n";
    return kExitRefused;
  } catch (const genhess::RadiusTooLarge& e) {
    std::cerr << "error: " << e.what() << "; try --radius below "
              << e.safe_radius << "\n";
    return kExitRefused;
  } catch (const genhess::ProblemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
