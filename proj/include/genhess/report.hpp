#ifndef GENHESS_REPORT_HPP
#define GENHESS_REPORT_HPP

#include <string>

#include <json.hpp>

#include "genhess/analysis.hpp"
#include "genhess/newton.hpp"
#include "genhess/sampling.hpp"

namespace genhess {

using OrderedJson = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "genhess/1";

// Every report embeds the problem it analyzed, so a report can be re-parsed
// into the same LinearSystem. Key order is fixed; output is deterministic
// given the inputs.

OrderedJson problem_to_json(const LinearSystem& sys);

OrderedJson analysis_to_json(const LinearSystem& sys,
                             const AnalysisReport& report);
std::string analysis_to_text(const LinearSystem& sys,
                             const AnalysisReport& report);

OrderedJson batch_to_json(const LinearSystem& sys, const SampleBatch& batch);
std::string batch_to_text(const LinearSystem& sys, const SampleBatch& batch);

OrderedJson trace_to_json(const LinearSystem& sys, const SolveTrace& trace);
std::string trace_to_text(const LinearSystem& sys, const SolveTrace& trace);

}  // namespace genhess

#endif  // GENHESS_REPORT_HPP
