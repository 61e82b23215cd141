#ifndef SEMCOM_IO_HPP
#define SEMCOM_IO_HPP

#include <filesystem>
#include <string>

#include "semcom/das.hpp"
#include "semcom/security.hpp"
#include "semcom/session.hpp"

#include <json.hpp>

namespace semcom {

using json = nlohmann::ordered_json;

// Knowledge bases and message pools travel as the clause text format.
Program load_program(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// JointPMF document:
//   {
//     "variables": [{"name": "X", "domain": [0, 1]}, ...],
//     "uniform": true                      // or:
//     "table": [{"assignment": {"X": 0, "Y": 1}, "prob": 0.1}, ...]
//   }
JointPMF joint_from_json(const json& doc);
JointPMF load_joint(const std::filesystem::path& path);

// Belief document: {"hypotheses": [{"kb": "alice1.pl", "weight": 0.5}, ...]}
// with KB paths resolved against base_dir.
SenderBelief belief_from_json(const json& doc, const std::filesystem::path& base_dir);

// Parses "Y<=75" style predicates against a joint's variables.
EventPredicate parse_event_predicate(const std::string& text, const JointPMF& pmf);

// Scenario documents (field-by-field schemas in the README).
struct SessionScenario {
    CandidatePool pool;
    Sender sender;
    Program receiver_kb;
    SessionConfig config;
};
SessionScenario load_session_scenario(const std::filesystem::path& path);

struct DasScenario {
    DasState state;
    DasStop stop;
    std::vector<std::int64_t> realization;
};
DasScenario load_das_scenario(const std::filesystem::path& path);

struct SemanticDasScenario {
    Program kb;
    std::vector<NodeMessage> nodes;
    SemanticDasStop stop;
    AssimilationPolicy policy = AssimilationPolicy::Union;
    EntropyConfig entropy;
};
SemanticDasScenario load_semantic_das_scenario(const std::filesystem::path& path);

// Structured outputs. CSV has one row per round; JSON carries the full
// trace plus totals. Both are byte-stable for a fixed seed.
std::string session_trace_csv(const SessionTrace& trace);
json session_summary_json(const SessionTrace& trace);
std::string das_trace_csv(const DasTrace& trace, const JointPMF& joint);
json das_summary_json(const DasTrace& trace, const JointPMF& joint);
std::string semantic_das_trace_csv(const SemanticDasResult& result);
json semantic_das_summary_json(const SemanticDasResult& result);

json query_result_json(const Atom& q, const QueryResult& result);
json uncertainty_report_json(const UncertaintyReport& report);
json selection_outcome_json(const SelectionOutcome& outcome);
json security_report_json(const SecurityReport& report);

// Full-precision decimal text for doubles (shortest round-trip form).
std::string format_double(double v);

}  // namespace semcom

#endif  // SEMCOM_IO_HPP
