#include "genhess/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace genhess {

namespace {

OrderedJson vec_json(const Eigen::VectorXd& v) {
  OrderedJson out = OrderedJson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

OrderedJson ivec_json(const Eigen::VectorXi& v) {
  OrderedJson out = OrderedJson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

OrderedJson mat_json(const Eigen::MatrixXd& m) {
  OrderedJson out = OrderedJson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.push_back(vec_json(m.row(i).transpose()));
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string matrix_line(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? ", " : "") << fmt(m(i, j));
    }
  }
  os << "]";
  return os.str();
}

std::string vector_line(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << fmt(v[i]);
  os << ")";
  return os.str();
}

std::string index_line(const std::vector<int>& idx) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
  os << "}";
  return os.str();
}

const char* status_name(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::Converged: return "converged";
    case NewtonStatus::MaxIter: return "max_iter";
    case NewtonStatus::Stalled: return "stalled";
  }
  return "unknown";
}

}  // namespace

OrderedJson problem_to_json(const LinearSystem& sys) {
  OrderedJson j;
  j["A"] = mat_json(sys.A());
  j["b"] = vec_json(sys.b());
  j["eps_active"] = sys.eps_active();
  return j;
}

OrderedJson analysis_to_json(const LinearSystem& sys,
                             const AnalysisReport& report) {
  OrderedJson j;
  j["version"] = kReportVersion;
  j["command"] = "analyze";
  j["problem"] = problem_to_json(sys);
  j["point"] = vec_json(report.point);

  OrderedJson part;
  part["active"] = report.partition.active;
  part["violated"] = report.partition.violated;
  part["satisfied"] = report.partition.satisfied;
  part["residuals"] = vec_json(report.partition.residuals);
  j["partition"] = std::move(part);

  OrderedJson slater;
  slater["holds"] = report.slater.holds;
  if (report.slater.holds) {
    slater["witness"] = vec_json(report.slater.witness);
    slater["margin"] = report.slater.margin;
  }
  j["slater"] = std::move(slater);

  OrderedJson li;
  li["holds"] = report.li.holds;
  li["rank"] = report.li.rank;
  li["active_count"] = report.li.active_count;
  j["li_condition"] = std::move(li);

  OrderedJson patterns = OrderedJson::array();
  for (const SignPattern& p : report.patterns) {
    OrderedJson pj;
    pj["indices"] = p.indices;
    pj["signs"] = p.to_string();
    pj["witness"] = vec_json(p.witness);
    pj["margin"] = std::isfinite(p.margin) ? OrderedJson(p.margin)
                                           : OrderedJson(nullptr);
    patterns.push_back(std::move(pj));
  }
  j["patterns"] = std::move(patterns);

  OrderedJson hull;
  hull["extreme_count"] = report.hull.extremes.size();
  hull["base_pattern"] = ivec_json(report.hull.base_pattern);
  OrderedJson extremes = OrderedJson::array();
  for (const CandidateHessian& e : report.hull.extremes) {
    OrderedJson ej;
    ej["diagonal"] = ivec_json(e.label.binary);
    ej["pattern"] = e.label.pattern;
    ej["matrix"] = mat_json(e.matrix);
    extremes.push_back(std::move(ej));
  }
  hull["extremes"] = std::move(extremes);
  j["hull"] = std::move(hull);

  OrderedJson mang;
  mang["verdict"] = report.mangasarian.equal ? "equal" : "strict_subset";
  mang["candidate_count"] = report.mangasarian.candidate_count;
  mang["distinct_count"] = report.mangasarian.distinct_count;
  if (report.mangasarian.witness) {
    OrderedJson wj;
    wj["diagonal"] = ivec_json(report.mangasarian.witness->label.binary);
    wj["matrix"] = mat_json(report.mangasarian.witness->matrix);
    mang["witness"] = std::move(wj);
    mang["phase1_gap"] = report.mangasarian.witness_gap;
  }
  j["mangasarian"] = std::move(mang);

  OrderedJson evt;
  evt["plus_member"] = report.evtushenko.plus_member;
  evt["minus_member"] = report.evtushenko.minus_member;
  j["evtushenko"] = std::move(evt);
  return j;
}

std::string analysis_to_text(const LinearSystem& sys,
                             const AnalysisReport& report) {
  std::ostringstream os;
  os << "point: " << vector_line(report.point) << "\n";
  os << "partition: active=" << index_line(report.partition.active)
     << " violated=" << index_line(report.partition.violated)
     << " satisfied=" << index_line(report.partition.satisfied) << "\n";
  if (report.slater.holds) {
    os << "slater: holds, witness " << vector_line(report.slater.witness)
       << ", margin " << fmt(report.slater.margin) << "\n";
  } else {
    os << "slater: fails (no strictly feasible point)\n";
  }
  os << "linear independence: "
     << (report.li.holds ? "holds" : "fails") << " (rank " << report.li.rank
     << " of " << report.li.active_count << " active rows)\n";
  os << "achievable patterns: " << report.patterns.size() << "\n";
  for (const SignPattern& p : report.patterns) {
    os << "  " << (p.indices.empty() ? "(none)" : p.to_string());
    if (!p.indices.empty()) {
      os << "  witness " << vector_line(p.witness) << "  margin "
         << fmt(p.margin);
    }
    os << "\n";
  }
  os << "generalized Hessian: convex hull of " << report.hull.extremes.size()
     << " extreme matrix(es)\n";
  for (const CandidateHessian& e : report.hull.extremes) {
    os << "  " << matrix_line(e.matrix) << "\n";
  }
  os << "candidate set vs hull: "
     << (report.mangasarian.equal ? "equal" : "strict subset") << " ("
     << report.mangasarian.distinct_count << " distinct candidates from "
     << report.mangasarian.candidate_count << " diagonals)\n";
  if (report.mangasarian.witness) {
    os << "  witness outside hull: "
       << matrix_line(report.mangasarian.witness->matrix) << " (phase-1 gap "
       << fmt(report.mangasarian.witness_gap) << ")\n";
  }
  os << "D+ element in hull: "
     << (report.evtushenko.plus_member ? "yes" : "no") << "\n";
  os << "D- element in hull: "
     << (report.evtushenko.minus_member ? "yes" : "no") << "\n";
  (void)sys;
  return os.str();
}

OrderedJson batch_to_json(const LinearSystem& sys, const SampleBatch& batch) {
  OrderedJson j;
  j["version"] = kReportVersion;
  j["command"] = "sample";
  j["problem"] = problem_to_json(sys);
  j["center"] = vec_json(batch.center);
  j["radius"] = batch.radius;
  j["count"] = batch.count;
  j["seed"] = batch.seed;
  j["hull_available"] = batch.hull.has_value();
  if (batch.hull) {
    OrderedJson extremes = OrderedJson::array();
    for (const CandidateHessian& e : batch.hull->extremes) {
      extremes.push_back(mat_json(e.matrix));
    }
    j["hull_extremes"] = std::move(extremes);
    std::vector<int> hits(batch.hull->extremes.size(), 0);
    int no_match = 0;
    for (const HessianSample& s : batch.samples) {
      if (s.matched_extreme == kNoMatch) {
        ++no_match;
      } else {
        ++hits[static_cast<size_t>(s.matched_extreme)];
      }
    }
    j["match_counts"] = hits;
    j["no_match_count"] = no_match;
  }
  OrderedJson samples = OrderedJson::array();
  for (const HessianSample& s : batch.samples) {
    OrderedJson sj;
    sj["point"] = vec_json(s.point);
    sj["pattern"] = ivec_json(s.local_pattern);
    sj["matched_extreme"] = s.matched_extreme;
    sj["match_distance"] = s.match_distance;
    sj["fd_error"] = (s.fd_hessian - s.exact_hessian).norm();
    samples.push_back(std::move(sj));
  }
  j["samples"] = std::move(samples);
  return j;
}

std::string batch_to_text(const LinearSystem& sys, const SampleBatch& batch) {
  std::ostringstream os;
  os << "center: " << vector_line(batch.center) << "\n";
  os << "radius: " << fmt(batch.radius) << ", count: " << batch.count
     << ", seed: " << batch.seed << "\n";
  if (batch.hull) {
    std::vector<int> hits(batch.hull->extremes.size(), 0);
    int no_match = 0;
    for (const HessianSample& s : batch.samples) {
      if (s.matched_extreme == kNoMatch) {
        ++no_match;
      } else {
        ++hits[static_cast<size_t>(s.matched_extreme)];
      }
    }
    os << "hull extremes: " << batch.hull->extremes.size() << "\n";
    for (size_t e = 0; e < batch.hull->extremes.size(); ++e) {
      os << "  [" << e << "] " << matrix_line(batch.hull->extremes[e].matrix)
         << "  matched by " << hits[e] << " sample(s)\n";
    }
    os << "samples without a match: " << no_match << "\n";
  } else {
    os << "hull not computed (active set above the enumeration cap)\n";
  }
  double max_fd_error = 0.0;
  for (const HessianSample& s : batch.samples) {
    max_fd_error =
        std::max(max_fd_error, (s.fd_hessian - s.exact_hessian).norm());
  }
  os << "max |fd - exact| over samples: " << fmt(max_fd_error) << "\n";
  (void)sys;
  return os.str();
}

OrderedJson trace_to_json(const LinearSystem& sys, const SolveTrace& trace) {
  OrderedJson j;
  j["version"] = kReportVersion;
  j["command"] = "solve";
  j["problem"] = problem_to_json(sys);
  j["status"] = status_name(trace.status);
  j["delta"] = trace.delta;
  j["armijo_slope"] = trace.armijo_slope;
  j["backtrack"] = trace.backtrack;
  j["iterations"] = trace.iterates.size() - 1;
  if (!trace.diagnostic.empty()) j["diagnostic"] = trace.diagnostic;
  OrderedJson iters = OrderedJson::array();
  for (const NewtonIterate& it : trace.iterates) {
    OrderedJson ij;
    ij["x"] = vec_json(it.x);
    ij["f"] = it.f;
    ij["grad_norm"] = it.grad_norm;
    iters.push_back(std::move(ij));
  }
  j["iterates"] = std::move(iters);
  return j;
}

std::string trace_to_text(const LinearSystem& sys, const SolveTrace& trace) {
  std::ostringstream os;
  os << "status: " << status_name(trace.status) << " after "
     << trace.iterates.size() - 1 << " iteration(s), delta "
     << fmt(trace.delta) << "\n";
  if (!trace.diagnostic.empty()) os << "diagnostic: " << trace.diagnostic << "\n";
  for (size_t k = 0; k < trace.iterates.size(); ++k) {
    const NewtonIterate& it = trace.iterates[k];
    os << "  " << k << ": f=" << fmt(it.f) << "  |grad|=" << fmt(it.grad_norm)
       << "  x=" << vector_line(it.x) << "\n";
  }
  (void)sys;
  return os.str();
}

}  // namespace genhess
