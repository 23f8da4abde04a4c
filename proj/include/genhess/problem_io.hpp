#ifndef GENHESS_PROBLEM_IO_HPP
#define GENHESS_PROBLEM_IO_HPP

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "genhess/linear_system.hpp"

namespace genhess {

/// Malformed or inconsistent problem input; message carries the position
/// when the underlying parser provides one.
class ProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// On-disk problem: the matrix and rhs of A x <= b, an optional activity
/// tolerance and optional named query points.
struct ProblemFile {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::optional<double> eps_active;
  std::map<std::string, Eigen::VectorXd> points;

  LinearSystem make_system(std::optional<double> eps_override = {}) const;
};

ProblemFile problem_from_json(const nlohmann::json& j);
ProblemFile load_problem(const std::string& path);

/// Parse "(1, 2.5, -3)" or "1,2.5,-3" into a vector.
Eigen::VectorXd parse_inline_vector(const std::string& text);

/// A point argument is either a name from the file or an inline vector.
Eigen::VectorXd resolve_point(const ProblemFile& problem,
                              const std::string& name_or_inline);

}  // namespace genhess

#endif  // GENHESS_PROBLEM_IO_HPP
