#include "genhess/problem_io.hpp"

#include <fstream>
#include <sstream>

namespace genhess {

namespace {

Eigen::VectorXd vector_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) {
    throw ProblemError(std::string(what) + " must be an array of numbers");
  }
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      std::ostringstream msg;
      msg << what << "[" << i << "] is not a number";
      throw ProblemError(msg.str());
    }
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

}  // namespace

LinearSystem ProblemFile::make_system(std::optional<double> eps_override) const {
  const double eps = eps_override.value_or(eps_active.value_or(1e-9));
  try {
    return LinearSystem(A, b, eps);
  } catch (const std::invalid_argument& e) {
    throw ProblemError(e.what());
  }
}

ProblemFile problem_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ProblemError("problem must be a JSON object");
  if (!j.contains("A") || !j.contains("b")) {
    throw ProblemError("problem must contain \"A\" and \"b\"");
  }

  ProblemFile p;
  const auto& ja = j.at("A");
  if (!ja.is_array() || ja.empty()) {
    throw ProblemError("\"A\" must be a nonempty array of rows");
  }
  const size_t m = ja.size();
  size_t n = 0;
  for (size_t i = 0; i < m; ++i) {
    const Eigen::VectorXd row = vector_from_json(ja[i], "A row");
    if (i == 0) {
      n = static_cast<size_t>(row.size());
      if (n == 0) throw ProblemError("\"A\" rows must be nonempty");
      p.A.resize(m, n);
    } else if (static_cast<size_t>(row.size()) != n) {
      std::ostringstream msg;
      msg << "A is not rectangular: row " << i << " has " << row.size()
          << " entries, expected " << n;
      throw ProblemError(msg.str());
    }
    p.A.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }

  p.b = vector_from_json(j.at("b"), "b");
  if (static_cast<size_t>(p.b.size()) != m) {
    std::ostringstream msg;
    msg << "b has length " << p.b.size() << ", expected " << m;
    throw ProblemError(msg.str());
  }

  if (j.contains("eps_active")) {
    if (!j.at("eps_active").is_number()) {
      throw ProblemError("\"eps_active\" must be a number");
    }
    p.eps_active = j.at("eps_active").get<double>();
  }

  if (j.contains("points")) {
    const auto& jp = j.at("points");
    if (!jp.is_object()) {
      throw ProblemError("\"points\" must be an object of named vectors");
    }
    for (const auto& [name, value] : jp.items()) {
      const Eigen::VectorXd pt = vector_from_json(value, "point");
      if (static_cast<size_t>(pt.size()) != n) {
        std::ostringstream msg;
        msg << "point \"" << name << "\" has length " << pt.size()
            << ", expected " << n;
        throw ProblemError(msg.str());
      }
      p.points.emplace(name, pt);
    }
  }
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError("cannot open problem file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() already includes the byte position.
    throw ProblemError(std::string("parse error in ") + path + ": " + e.what());
  }
  return problem_from_json(j);
}

Eigen::VectorXd parse_inline_vector(const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') {
      throw ProblemError("unbalanced parentheses in vector: " + text);
    }
    body = body.substr(1, body.size() - 2);
  }
  std::vector<double> values;
  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ProblemError("cannot parse vector component \"" + item + "\"");
    }
  }
  if (values.empty()) throw ProblemError("empty vector: " + text);
  return Eigen::Map<Eigen::VectorXd>(values.data(),
                                     static_cast<Eigen::Index>(values.size()));
}

Eigen::VectorXd resolve_point(const ProblemFile& problem,
                              const std::string& name_or_inline) {
  const auto it = problem.points.find(name_or_inline);
  if (it != problem.points.end()) return it->second;
  if (name_or_inline.find(',') != std::string::npos || name_or_inline.find('(') == 0) {
    const Eigen::VectorXd pt = parse_inline_vector(name_or_inline);
    if (pt.size() != problem.A.cols()) {
      std::ostringstream msg;
      msg << "point has length " << pt.size() << ", expected "
          << problem.A.cols();
      throw ProblemError(msg.str());
    }
    return pt;
  }
  throw ProblemError("unknown point \"" + name_or_inline +
                     "\" (not a named point, and not an inline vector)");
}

}  // namespace genhess
