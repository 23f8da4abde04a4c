#ifndef GENHESS_BUILTIN_HPP
#define GENHESS_BUILTIN_HPP

#include <string>
#include <vector>

#include "genhess/linear_system.hpp"

namespace genhess::builtin {

/// x1 <= 0 and -x1 <= 0: two opposite rows. f is twice differentiable
/// everywhere, yet the interval candidate set at x1 = 0 is a whole segment
/// and both D+ and D- elements miss the true Hessian.
LinearSystem opposite_rows();

/// x1 <= 0, x2 <= 0, x1 + x2 <= 0: dependent active rows at the origin.
/// The system has interior points, but one candidate extreme still falls
/// outside the exact hull.
LinearSystem dependent_triple();

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // expected vs actual on failure
};

/// Run both built-in systems end to end against their known analysis
/// values. With corrupt_expected set, one expected entry is deliberately
/// wrong so the FAIL path is observable.
std::vector<CheckResult> run_builtin_checks(bool corrupt_expected = false);

}  // namespace genhess::builtin

#endif  // GENHESS_BUILTIN_HPP
