#include "semcom/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "semcom/errors.hpp"
#include "semcom/parser.hpp"

namespace semcom {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
}

Program load_program(const std::filesystem::path& path) { return parse_program(read_file(path)); }

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

json parse_json(const std::string& text, const std::string& what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw IoError("malformed JSON in " + what);
    return doc;
}

const json& require(const json& doc, const char* key, const std::string& what) {
    if (!doc.contains(key)) throw IoError(what + ": missing field \"" + key + "\"");
    return doc.at(key);
}

}  // namespace

JointPMF joint_from_json(const json& doc) {
    std::vector<JointVariable> vars;
    for (const auto& v : require(doc, "variables", "joint document")) {
        JointVariable var;
        var.name = require(v, "name", "joint variable").get<std::string>();
        for (const auto& d : require(v, "domain", "joint variable"))
            var.domain.push_back(d.get<std::int64_t>());
        vars.push_back(std::move(var));
    }
    if (doc.value("uniform", false)) return JointPMF::uniform(std::move(vars));

    std::vector<std::pair<JointPMF::Assignment, double>> rows;
    for (const auto& row : require(doc, "table", "joint document")) {
        const json& assignment = require(row, "assignment", "joint table row");
        JointPMF::Assignment a;
        for (const auto& v : vars) {
            if (!assignment.contains(v.name))
                throw IoError("joint table row missing value for " + v.name);
            a.push_back(assignment.at(v.name).get<std::int64_t>());
        }
        rows.emplace_back(std::move(a), require(row, "prob", "joint table row").get<double>());
    }
    return JointPMF::from_rows(std::move(vars), rows);
}

JointPMF load_joint(const std::filesystem::path& path) {
    return joint_from_json(parse_json(read_file(path), path.string()));
}

SenderBelief belief_from_json(const json& doc, const std::filesystem::path& base_dir) {
    SenderBelief belief;
    for (const auto& h : require(doc, "hypotheses", "belief document")) {
        SenderBelief::Hypothesis hypothesis;
        if (h.contains("kb"))
            hypothesis.kb = load_program(base_dir / h.at("kb").get<std::string>());
        else if (h.contains("clauses"))
            hypothesis.kb = parse_program(h.at("clauses").get<std::string>());
        hypothesis.weight = require(h, "weight", "belief hypothesis").get<double>();
        belief.hypotheses.push_back(std::move(hypothesis));
    }
    belief.validate();
    return belief;
}

EventPredicate parse_event_predicate(const std::string& text, const JointPMF& pmf) {
    static const std::pair<const char*, CompareOp> ops[] = {
        {">=", CompareOp::Ge}, {"<=", CompareOp::Le}, {"==", CompareOp::Eq},
        {"!=", CompareOp::Ne}, {">", CompareOp::Gt},  {"<", CompareOp::Lt},
    };
    for (const auto& [symbol, op] : ops) {
        auto pos = text.find(symbol);
        if (pos == std::string::npos) continue;
        std::string name = text.substr(0, pos);
        std::string value_text = text.substr(pos + std::string(symbol).size());
        auto strip = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto end = s.find_last_not_of(" \t");
            if (end != std::string::npos) s.erase(end + 1);
            return s;
        };
        name = strip(name);
        value_text = strip(value_text);
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (ec != std::errc{} || ptr != value_text.data() + value_text.size())
            throw IoError("event predicate needs an integer bound: " + text);
        std::size_t index = pmf.variable_index(name);
        CompareOp cmp = op;
        return [index, cmp, value](const JointPMF::Assignment& a) {
            switch (cmp) {
                case CompareOp::Ge: return a[index] >= value;
                case CompareOp::Gt: return a[index] > value;
                case CompareOp::Le: return a[index] <= value;
                case CompareOp::Lt: return a[index] < value;
                case CompareOp::Eq: return a[index] == value;
                case CompareOp::Ne: return a[index] != value;
            }
            return false;
        };
    }
    throw IoError("event predicate must look like \"Y<=75\": " + text);
}

namespace {

EntropyConfig entropy_from_json(const json& doc) {
    EntropyConfig cfg;
    cfg.unmatched_query_prob = doc.value("unmatched_prob", 0.5);
    cfg.max_switches = doc.value("max_switches", std::size_t{24});
    return cfg;
}

}  // namespace

SessionScenario load_session_scenario(const std::filesystem::path& path) {
    json doc = parse_json(read_file(path), path.string());
    auto base = path.parent_path();

    SessionScenario scenario;
    scenario.pool.messages =
        load_program(base / require(doc, "pool", "session scenario").get<std::string>()).clauses;
    scenario.receiver_kb =
        load_program(base / require(doc, "receiver_kb", "session scenario").get<std::string>());

    const json& sender = require(doc, "sender", "session scenario");
    if (sender.contains("kb"))
        scenario.sender = load_program(base / sender.at("kb").get<std::string>());
    else if (sender.contains("belief"))
        scenario.sender = belief_from_json(sender.at("belief"), base);
    else
        throw IoError("session scenario: sender needs \"kb\" or \"belief\"");

    SessionConfig& cfg = scenario.config;
    if (doc.contains("channel")) {
        const json& channel = doc.at("channel");
        cfg.channel.epsilon = channel.value("epsilon", 0.0);
        if (channel.contains("schedule"))
            for (const auto& e : channel.at("schedule")) cfg.epsilon_schedule.push_back(e.get<double>());
    }
    cfg.max_retransmissions = doc.value("max_retransmissions", 0);
    cfg.rounds = doc.value("rounds", 1);
    cfg.assimilation = assimilation_policy_from_string(doc.value("assimilation", "union"));
    cfg.stop_delta = doc.value("stop_delta", 0.0);
    cfg.rng_seed = doc.value("seed", std::uint64_t{0});
    cfg.rate_factor = doc.value("rate_factor", 1.0);
    cfg.belief_sigma = doc.value("belief_sigma", 0.05);
    cfg.entropy = entropy_from_json(doc);

    const json& policy = require(doc, "policy", "session scenario");
    std::string mode = require(policy, "mode", "session policy").get<std::string>();
    if (mode == "ukb") {
        cfg.policy.mode = SelectionMode::Ukb;
    } else if (mode == "query" || mode == "query_constrained") {
        cfg.policy.mode = mode == "query" ? SelectionMode::Query : SelectionMode::QueryConstrained;
        cfg.policy.query = parse_atom(require(policy, "query", "session policy").get<std::string>());
        if (cfg.policy.mode == SelectionMode::QueryConstrained)
            cfg.policy.l_max = require(policy, "l_max", "session policy").get<double>();
    } else {
        throw IoError("session scenario: unknown policy mode " + mode);
    }
    return scenario;
}

DasScenario load_das_scenario(const std::filesystem::path& path) {
    json doc = parse_json(read_file(path), path.string());
    auto base = path.parent_path();

    const json& joint_field = require(doc, "joint", "das scenario");
    json joint_doc = joint_field.is_string()
                         ? parse_json(read_file(base / joint_field.get<std::string>()), "joint document")
                         : joint_field;
    DasScenario scenario{DasState{joint_from_json(joint_doc), {}, {}}, {}, {}};

    const JointPMF& joint = scenario.state.joint;
    const json& realization = require(doc, "realization", "das scenario");
    for (const auto& v : joint.variables()) {
        if (!realization.contains(v.name))
            throw IoError("das scenario: realization missing " + v.name);
        scenario.realization.push_back(realization.at(v.name).get<std::int64_t>());
    }

    if (doc.contains("observed"))
        for (const auto& [name, value] : doc.at("observed").items())
            scenario.state.observed[joint.variable_index(name)] = value.get<std::int64_t>();

    if (doc.contains("target")) {
        std::vector<std::int64_t> phi(joint.size(), 0);
        std::vector<char> seen(joint.size(), 0);
        for (const auto& row : doc.at("target")) {
            const json& assignment = require(row, "assignment", "target row");
            JointPMF::Assignment a;
            for (const auto& v : joint.variables()) a.push_back(assignment.at(v.name).get<std::int64_t>());
            std::size_t flat = joint.encode(a);
            phi[flat] = require(row, "value", "target row").get<std::int64_t>();
            seen[flat] = 1;
        }
        for (std::size_t flat = 0; flat < joint.size(); ++flat)
            if (!seen[flat] && joint.table()[flat] > 0.0)
                throw IoError("das scenario: target table misses a supported assignment");
        scenario.state.target = std::move(phi);
    }

    if (doc.contains("stop")) {
        const json& stop = doc.at("stop");
        if (stop.contains("max_rounds")) scenario.stop.max_rounds = stop.at("max_rounds").get<int>();
        if (stop.contains("target_entropy"))
            scenario.stop.target_entropy = stop.at("target_entropy").get<double>();
    }
    return scenario;
}

SemanticDasScenario load_semantic_das_scenario(const std::filesystem::path& path) {
    json doc = parse_json(read_file(path), path.string());
    auto base = path.parent_path();

    SemanticDasScenario scenario;
    scenario.kb = load_program(base / require(doc, "kb", "semantic-das scenario").get<std::string>());
    for (const auto& node : require(doc, "nodes", "semantic-das scenario")) {
        NodeMessage nm;
        nm.index = require(node, "index", "node").get<std::size_t>();
        nm.message = parse_clause(require(node, "clause", "node").get<std::string>());
        scenario.nodes.push_back(std::move(nm));
    }
    if (doc.contains("stop")) {
        const json& stop = doc.at("stop");
        if (stop.contains("max_rounds")) scenario.stop.max_rounds = stop.at("max_rounds").get<int>();
        scenario.stop.min_improvement = stop.value("min_improvement", 0.0);
    }
    scenario.policy = assimilation_policy_from_string(doc.value("assimilation", "union"));
    scenario.entropy = entropy_from_json(doc);
    return scenario;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join_weights(const std::vector<double>& weights) {
    std::string out;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) out += ';';
        out += format_double(weights[i]);
    }
    return out;
}

std::string join_scores(const std::vector<std::pair<std::size_t, double>>& scores) {
    std::string out;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(scores[i].first) + ":" + format_double(scores[i].second);
    }
    return out;
}

}  // namespace

std::string session_trace_csv(const SessionTrace& trace) {
    std::string out =
        "round,clause,length_bits,attempts,delivered,channel_uses,receiver_u_after,"
        "query_entropy_after,belief_weights\n";
    for (const auto& row : trace.rounds) {
        out += std::to_string(row.round) + ',';
        out += csv_escape(canonical(row.selected)) + ',';
        out += std::to_string(row.length_bits) + ',';
        out += std::to_string(row.attempts) + ',';
        out += row.delivered ? "1," : "0,";
        out += std::to_string(row.channel_uses) + ',';
        out += format_double(row.receiver_u_after) + ',';
        out += row.query_entropy_after ? format_double(*row.query_entropy_after) : std::string{};
        out += ',';
        out += csv_escape(join_weights(row.belief_weights));
        out += '\n';
    }
    return out;
}

json session_summary_json(const SessionTrace& trace) {
    json rounds = json::array();
    for (const auto& row : trace.rounds) {
        json r;
        r["round"] = row.round;
        r["clause"] = canonical(row.selected);
        r["length_bits"] = row.length_bits;
        r["attempts"] = row.attempts;
        r["delivered"] = row.delivered;
        r["channel_uses"] = row.channel_uses;
        r["receiver_u_after"] = row.receiver_u_after;
        if (row.query_entropy_after) r["query_entropy_after"] = *row.query_entropy_after;
        if (!row.belief_weights.empty()) r["belief_weights"] = row.belief_weights;
        rounds.push_back(std::move(r));
    }
    json doc;
    doc["initial_u"] = trace.initial_u;
    if (trace.initial_query_entropy) doc["initial_query_entropy"] = *trace.initial_query_entropy;
    doc["rounds"] = std::move(rounds);
    doc["stop_reason"] = to_string(trace.stop_reason);
    doc["total_bits_on_air"] = trace.total_bits_on_air;
    if (trace.capacity_unbounded)
        doc["capacity_cost"] = "unbounded";
    else
        doc["capacity_cost"] = trace.capacity_cost;
    doc["receiver_final"] = canonical(trace.receiver_final);
    return doc;
}

std::string das_trace_csv(const DasTrace& trace, const JointPMF& joint) {
    std::string out = "round,chosen_index,chosen_name,scores,entropy_after\n";
    for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
        const auto& round = trace.rounds[i];
        out += std::to_string(i + 1) + ',';
        out += std::to_string(round.chosen) + ',';
        out += joint.variables()[round.chosen].name + ',';
        out += csv_escape(join_scores(round.scores)) + ',';
        out += format_double(round.entropy_after);
        out += '\n';
    }
    return out;
}

namespace {

json das_rounds_json(const DasTrace& trace, const JointPMF* joint) {
    json rounds = json::array();
    for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
        const auto& round = trace.rounds[i];
        json r;
        r["round"] = i + 1;
        r["chosen_index"] = round.chosen;
        if (joint) r["chosen_name"] = joint->variables()[round.chosen].name;
        json scores = json::array();
        for (const auto& [n, s] : round.scores) scores.push_back(json{{"index", n}, {"score", s}});
        r["scores"] = std::move(scores);
        r["entropy_after"] = round.entropy_after;
        rounds.push_back(std::move(r));
    }
    return rounds;
}

}  // namespace

json das_summary_json(const DasTrace& trace, const JointPMF& joint) {
    json doc;
    doc["initial_entropy"] = trace.initial_entropy;
    doc["rounds"] = das_rounds_json(trace, &joint);
    doc["stop_reason"] = to_string(trace.stop_reason);
    return doc;
}

std::string semantic_das_trace_csv(const SemanticDasResult& result) {
    std::string out = "round,chosen_index,scores,u_after\n";
    for (std::size_t i = 0; i < result.trace.rounds.size(); ++i) {
        const auto& round = result.trace.rounds[i];
        out += std::to_string(i + 1) + ',';
        out += std::to_string(round.chosen) + ',';
        out += csv_escape(join_scores(round.scores)) + ',';
        out += format_double(round.entropy_after);
        out += '\n';
    }
    return out;
}

json semantic_das_summary_json(const SemanticDasResult& result) {
    json doc;
    doc["initial_u"] = result.trace.initial_entropy;
    doc["rounds"] = das_rounds_json(result.trace, nullptr);
    doc["stop_reason"] = to_string(result.trace.stop_reason);
    doc["final_kb"] = canonical(result.kb);
    return doc;
}

json query_result_json(const Atom& q, const QueryResult& result) {
    json doc;
    doc["query"] = to_string(q);
    doc["prob"] = result.prob;
    doc["matched"] = result.matched;
    doc["worlds_enumerated"] = result.worlds_enumerated;
    return doc;
}

json uncertainty_report_json(const UncertaintyReport& report) {
    json doc;
    doc["u_kb"] = report.value;
    doc["head_count"] = report.head_count;
    doc["empty"] = report.empty;
    json per_query = json::array();
    for (const auto& qe : report.per_query) {
        json row;
        row["query"] = to_string(qe.query);
        row["prob"] = qe.prob;
        row["entropy"] = qe.entropy;
        per_query.push_back(std::move(row));
    }
    doc["per_query"] = std::move(per_query);
    return doc;
}

json selection_outcome_json(const SelectionOutcome& outcome) {
    json doc;
    doc["chosen"] = canonical(outcome.chosen);
    doc["score"] = outcome.score;
    doc["feasible_count"] = outcome.feasible_count;
    json ranking = json::array();
    for (const auto& [clause, score] : outcome.ranking)
        ranking.push_back(json{{"clause", canonical(clause)}, {"score", score}});
    doc["ranking"] = std::move(ranking);
    return doc;
}

json security_report_json(const SecurityReport& report) {
    json doc;
    doc["eve_entropy_before"] = report.eve_entropy_before;
    doc["eve_entropy_after"] = report.eve_entropy_after;
    doc["bob_entropy_before"] = report.bob_entropy_before;
    doc["bob_entropy_after"] = report.bob_entropy_after;
    doc["opaque"] = report.opaque;
    doc["useful"] = report.useful;
    doc["secure"] = report.secure;
    return doc;
}

}  // namespace semcom
