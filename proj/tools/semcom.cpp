#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semcom/errors.hpp"
#include "semcom/io.hpp"
#include "semcom/parser.hpp"

namespace {

using namespace semcom;

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

unsigned default_jobs() {
    if (const char* env = std::getenv("SEMCOM_JOBS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> names;
    std::size_t start = 0;
    while (start <= csv.size()) {
        auto comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        std::string name = csv.substr(start, comma - start);
        if (!name.empty()) names.push_back(name);
        start = comma + 1;
    }
    return names;
}

struct Options {
    std::string format = "human";
    unsigned jobs = default_jobs();

    bool json() const { return format == "json"; }
    void emit(const semcom::json& doc) const { std::cout << doc.dump(2) << "\n"; }
};

void print_uncertainty_human(const UncertaintyReport& report) {
    std::cout << "U_KB = " << fmt6(report.value) << " over " << report.head_count << " queries";
    if (report.empty) std::cout << " (empty head set)";
    std::cout << "\n";
    for (const auto& qe : report.per_query)
        std::cout << "  " << to_string(qe.query) << ": p = " << fmt6(qe.prob)
                  << ", H = " << fmt6(qe.entropy) << "\n";
}

void print_selection_human(const SelectionOutcome& outcome) {
    std::cout << "chosen: " << canonical(outcome.chosen) << "  (score " << fmt6(outcome.score)
              << ", " << outcome.feasible_count << " feasible)\n";
    for (const auto& [clause, score] : outcome.ranking)
        std::cout << "  " << fmt6(score) << "  " << canonical(clause) << "\n";
}

int cmd_query(const Options& opt, const std::string& kb_path, const std::string& atom_text,
              double default_prob, std::size_t max_switches) {
    Program kb = load_program(kb_path);
    Atom q = parse_atom(atom_text);
    InferenceOptions opts;
    opts.unmatched_prob = default_prob;
    opts.max_switches = max_switches;
    opts.jobs = opt.jobs;
    QueryResult result = query_probability(ground(kb), q, opts);
    if (opt.json()) {
        opt.emit(query_result_json(q, result));
    } else {
        std::cout << "p[K |- " << to_string(q) << "] = " << fmt6(result.prob)
                  << (result.matched ? "" : "  (unmatched, default)") << "\n";
    }
    return 0;
}

int cmd_measure(const Options& opt, const std::string& kb_path, const std::string& content_path,
                const std::string& policy_name, double default_prob) {
    Program kb = load_program(kb_path);
    EntropyConfig cfg;
    cfg.unmatched_query_prob = default_prob;
    cfg.jobs = opt.jobs;
    UncertaintyReport report = kb_uncertainty(kb, cfg);

    if (content_path.empty()) {
        if (opt.json())
            opt.emit(uncertainty_report_json(report));
        else
            print_uncertainty_human(report);
        return 0;
    }

    AssimilationPolicy policy = assimilation_policy_from_string(policy_name);
    Program pool = load_program(content_path);
    semcom::json candidates = semcom::json::array();
    if (!opt.json()) std::cout << "U_KB = " << fmt6(report.value) << "\n";
    for (const auto& m : pool.clauses) {
        double u_after = kb_uncertainty(assimilate(kb, m, policy), cfg).value;
        double content = u_after - report.value;
        if (opt.json()) {
            candidates.push_back(semcom::json{{"clause", canonical(m)},
                                              {"semantic_content", content},
                                              {"u_after", u_after}});
        } else {
            std::cout << "  S_K(" << canonical(m) << ") = " << fmt6(content)
                      << "  (U -> " << fmt6(u_after) << ")\n";
        }
    }
    if (opt.json()) {
        semcom::json doc;
        doc["u_kb"] = report.value;
        doc["policy"] = policy_name;
        doc["candidates"] = std::move(candidates);
        opt.emit(doc);
    }
    return 0;
}

int cmd_select(const Options& opt, const std::string& pool_path, const std::string& kb_path,
               const std::string& belief_path, const std::string& query_text, double l_max,
               const std::string& policy_name, double default_prob) {
    CandidatePool pool{load_program(pool_path).clauses};
    AssimilationPolicy policy = assimilation_policy_from_string(policy_name);
    EntropyConfig cfg;
    cfg.unmatched_query_prob = default_prob;
    cfg.jobs = opt.jobs;

    SelectionOutcome outcome;
    if (!belief_path.empty()) {
        SenderBelief belief = belief_from_json(
            semcom::json::parse(read_file(belief_path)), std::filesystem::path(belief_path).parent_path());
        outcome = select_expected(belief, pool, policy, cfg);
    } else {
        Program kb = load_program(kb_path);
        if (query_text.empty()) {
            outcome = select_for_kb(kb, pool, policy, cfg);
        } else {
            Atom q = parse_atom(query_text);
            if (l_max < std::numeric_limits<double>::infinity())
                outcome = select_for_query_constrained(
                    kb, pool, q, l_max,
                    [](const Clause& m) { return static_cast<double>(message_length(m)); }, policy,
                    cfg);
            else
                outcome = select_for_query(kb, pool, q, policy, cfg);
        }
    }
    if (opt.json())
        opt.emit(selection_outcome_json(outcome));
    else
        print_selection_human(outcome);
    return 0;
}

int cmd_secure(const Options& opt, const std::string& eve_path, const std::string& bob_path,
               const std::string& message_path, const std::vector<std::string>& queries,
               double tol, double margin, const std::string& policy_name, double default_prob) {
    Program eve = load_program(eve_path);
    Program bob = load_program(bob_path);
    Program message_file = load_program(message_path);
    if (message_file.size() != 1)
        throw ConfigError("message file must contain exactly one clause");
    const Clause& m = message_file.clauses.front();
    AssimilationPolicy policy = assimilation_policy_from_string(policy_name);
    EntropyConfig cfg;
    cfg.unmatched_query_prob = default_prob;
    cfg.jobs = opt.jobs;

    semcom::json reports = semcom::json::array();
    for (const auto& query_text : queries) {
        Atom q = parse_atom(query_text);
        SecurityReport report = check_security(eve, bob, m, q, tol, margin, policy, cfg);
        if (opt.json()) {
            semcom::json doc = security_report_json(report);
            doc["query"] = to_string(q);
            reports.push_back(std::move(doc));
        } else {
            std::cout << to_string(q) << ": " << (report.secure ? "secure" : "NOT secure")
                      << "  (opaque=" << (report.opaque ? "yes" : "no")
                      << " eve " << fmt6(report.eve_entropy_before) << "->"
                      << fmt6(report.eve_entropy_after)
                      << ", useful=" << (report.useful ? "yes" : "no")
                      << " bob " << fmt6(report.bob_entropy_before) << "->"
                      << fmt6(report.bob_entropy_after) << ")\n";
        }
    }
    if (opt.json()) opt.emit(semcom::json{{"message", canonical(m)}, {"reports", reports}});
    return 0;
}

int cmd_simulate(const Options& opt, const std::string& scenario_path, const std::string& kind,
                 std::string trace_path, std::string summary_path, std::int64_t seed_override) {
    std::filesystem::path scenario(scenario_path);
    std::string stem = scenario.stem().string();
    if (trace_path.empty()) trace_path = stem + "_trace.csv";
    if (summary_path.empty()) summary_path = stem + "_summary.json";

    semcom::json summary;
    std::string csv;
    if (kind == "session") {
        SessionScenario s = load_session_scenario(scenario);
        if (seed_override >= 0) s.config.rng_seed = static_cast<std::uint64_t>(seed_override);
        s.config.entropy.jobs = opt.jobs;
        SessionTrace trace = run_session(s.pool, s.sender, s.receiver_kb, s.config);
        csv = session_trace_csv(trace);
        summary = session_summary_json(trace);
    } else if (kind == "das") {
        DasScenario s = load_das_scenario(scenario);
        DasTrace trace = run_das(s.state, s.stop, s.realization);
        csv = das_trace_csv(trace, s.state.joint);
        summary = das_summary_json(trace, s.state.joint);
    } else if (kind == "semantic-das") {
        SemanticDasScenario s = load_semantic_das_scenario(scenario);
        s.entropy.jobs = opt.jobs;
        SemanticDasResult result = run_semantic_das(s.kb, s.nodes, s.stop, s.policy, s.entropy);
        csv = semantic_das_trace_csv(result);
        summary = semantic_das_summary_json(result);
    } else {
        throw ConfigError("unknown simulation kind: " + kind);
    }

    write_file(trace_path, csv);
    write_file(summary_path, summary.dump(2) + "\n");
    if (opt.json())
        opt.emit(summary);
    else
        std::cout << "trace written to " << trace_path << "\nsummary written to " << summary_path
                  << "\nstop_reason: " << summary["stop_reason"].get<std::string>() << "\n";
    return 0;
}

int cmd_info(const Options& opt, const std::string& joint_path, const std::string& op,
             const std::string& target_csv, const std::string& given_csv, const std::string& x_csv,
             const std::string& y_csv, const std::string& pred, double epsilon) {
    auto answer = [&](const char* name, double bits) {
        if (opt.json())
            opt.emit(semcom::json{{"op", name}, {"bits", bits}});
        else
            std::cout << name << " = " << fmt6(bits) << " bits\n";
        return 0;
    };

    if (op == "capacity") return answer("capacity", bsc_capacity(ChannelSpec{epsilon}));

    if (joint_path.empty()) throw ConfigError("--op " + op + " needs a joint PMF file");
    JointPMF joint = load_joint(joint_path);
    auto all_names = [&] {
        std::vector<std::string> names;
        for (const auto& v : joint.variables()) names.push_back(v.name);
        return names;
    };

    if (op == "entropy") {
        auto names = target_csv.empty() ? all_names() : split_names(target_csv);
        return answer("entropy", entropy(joint, names));
    }
    if (op == "cond") {
        if (target_csv.empty() || given_csv.empty())
            throw ConfigError("--op cond needs --target and --given");
        return answer("conditional_entropy",
                      conditional_entropy(joint, split_names(target_csv), split_names(given_csv)));
    }
    if (op == "cond-event") {
        if (pred.empty()) throw ConfigError("--op cond-event needs --pred");
        return answer("conditional_entropy_event",
                      conditional_entropy_event(joint, parse_event_predicate(pred, joint)));
    }
    if (op == "mi") {
        if (x_csv.empty() || y_csv.empty()) throw ConfigError("--op mi needs --x and --y");
        return answer("mutual_information",
                      mutual_information(joint, split_names(x_csv), split_names(y_csv)));
    }
    if (op == "chain") {
        if (x_csv.empty() || y_csv.empty()) throw ConfigError("--op chain needs --x and --y");
        auto xs = split_names(x_csv);
        auto ys = split_names(y_csv);
        auto xy = xs;
        xy.insert(xy.end(), ys.begin(), ys.end());
        double joint_h = entropy(joint, xy);
        double chained = entropy(joint, xs) + conditional_entropy(joint, ys, xs);
        if (opt.json())
            opt.emit(semcom::json{{"op", "chain"},
                                  {"h_joint", joint_h},
                                  {"h_x_plus_h_y_given_x", chained}});
        else
            std::cout << "H(X,Y) = " << fmt6(joint_h) << " bits\nH(X) + H(Y|X) = " << fmt6(chained)
                      << " bits\n";
        return 0;
    }
    if (op == "sw") {
        if (x_csv.empty() || y_csv.empty()) throw ConfigError("--op sw needs --x and --y");
        SlepianWolfRates rates = slepian_wolf_rates(joint, split_names(x_csv), split_names(y_csv));
        if (opt.json()) {
            opt.emit(semcom::json{{"op", "sw"},
                                  {"h_x", rates.h_x},
                                  {"h_y_given_x", rates.h_y_given_x},
                                  {"h_joint", rates.h_joint},
                                  {"h_y", rates.h_y},
                                  {"savings", rates.savings}});
        } else {
            std::cout << "H(X) = " << fmt6(rates.h_x) << " bits\n"
                      << "H(Y|X) = " << fmt6(rates.h_y_given_x) << " bits\n"
                      << "H(X,Y) = " << fmt6(rates.h_joint) << " bits\n"
                      << "savings H(Y)-H(Y|X) = " << fmt6(rates.savings) << " bits\n";
        }
        return 0;
    }
    throw ConfigError("unknown info op: " + op);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semcom: probabilistic-logic semantic communication toolkit"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "Output mode")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--jobs", opt.jobs, "Worker threads (env SEMCOM_JOBS)");

    // query
    std::string kb_path, atom_text;
    double default_prob = 0.5;
    std::size_t max_switches = 24;
    auto* query = app.add_subcommand("query", "Probability of a ground atom against a KB");
    query->add_option("kb", kb_path, "KB file")->required();
    query->add_option("atom", atom_text, "Ground query atom")->required();
    query->add_option("--default-prob", default_prob, "Probability for unmatched queries");
    query->add_option("--max-switches", max_switches, "Enumeration cap");

    // measure
    std::string content_path, policy_name = "union";
    auto* measure = app.add_subcommand("measure", "KB uncertainty and message semantic content");
    measure->add_option("kb", kb_path, "KB file")->required();
    measure->add_option("--content", content_path, "Pool file: report S_K per clause");
    measure->add_option("--policy", policy_name, "union|replace");
    measure->add_option("--default-prob", default_prob, "Probability for unmatched queries");

    // select
    std::string pool_path, belief_path, query_text;
    double l_max = std::numeric_limits<double>::infinity();
    auto* select = app.add_subcommand("select", "Pick the best message from a pool");
    select->add_option("pool", pool_path, "Candidate pool file")->required();
    auto* kb_opt = select->add_option("--kb", kb_path, "Receiver KB (exactly known)");
    auto* belief_opt = select->add_option("--belief", belief_path, "Belief JSON over receiver KBs");
    kb_opt->excludes(belief_opt);
    auto* query_opt = select->add_option("--query", query_text, "Target query atom");
    select->add_option("--lmax", l_max, "Length bound L_max in bits")->needs(query_opt);
    select->add_option("--policy", policy_name, "union|replace");
    select->add_option("--default-prob", default_prob, "Probability for unmatched queries");

    // secure
    std::string eve_path, bob_path, message_path;
    std::vector<std::string> queries;
    double tol = 1e-9, margin = 1e-9;
    auto* secure = app.add_subcommand("secure", "Semantic-security check for a message");
    secure->add_option("--eve", eve_path, "Eavesdropper KB")->required();
    secure->add_option("--bob", bob_path, "Receiver KB")->required();
    secure->add_option("--message", message_path, "Single-clause message file")->required();
    secure->add_option("--query", queries, "Query atom (repeatable)")->required();
    secure->add_option("--tol", tol, "Opacity tolerance");
    secure->add_option("--margin", margin, "Usefulness margin");
    secure->add_option("--policy", policy_name, "union|replace");
    secure->add_option("--default-prob", default_prob, "Probability for unmatched queries");

    // simulate
    std::string scenario_path, kind = "session", trace_path, summary_path;
    std::int64_t seed_override = -1;
    auto* simulate = app.add_subcommand("simulate", "Run a session / das / semantic-das scenario");
    simulate->add_option("scenario", scenario_path, "Scenario JSON")->required();
    simulate->add_option("--kind", kind, "session|das|semantic-das")
        ->check(CLI::IsMember({"session", "das", "semantic-das"}));
    simulate->add_option("--trace", trace_path, "Trace CSV output path");
    simulate->add_option("--summary", summary_path, "Summary JSON output path");
    simulate->add_option("--seed", seed_override, "Override the scenario RNG seed");

    // info
    std::string joint_path, op, target_csv, given_csv, x_csv, y_csv, pred;
    double epsilon = 0.0;
    auto* info = app.add_subcommand("info", "Discrete information-theory calculations");
    info->add_option("joint", joint_path, "Joint PMF JSON (not needed for capacity)");
    info->add_option("--op", op, "entropy|cond|cond-event|mi|chain|sw|capacity")->required();
    info->add_option("--target", target_csv, "Comma-separated target variables");
    info->add_option("--given", given_csv, "Comma-separated conditioning variables");
    info->add_option("--x", x_csv, "Comma-separated X variables");
    info->add_option("--y", y_csv, "Comma-separated Y variables");
    info->add_option("--pred", pred, "Event predicate, e.g. \"Y<=75\"");
    info->add_option("--epsilon", epsilon, "BSC crossover probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (query->parsed()) return cmd_query(opt, kb_path, atom_text, default_prob, max_switches);
        if (measure->parsed())
            return cmd_measure(opt, kb_path, content_path, policy_name, default_prob);
        if (select->parsed()) {
            if (kb_path.empty() && belief_path.empty()) {
                std::cerr << "select: need --kb or --belief\n";
                return 2;
            }
            if (!belief_path.empty() && !query_text.empty()) {
                std::cerr << "select: --belief supports only whole-KB selection (no --query)\n";
                return 2;
            }
            return cmd_select(opt, pool_path, kb_path, belief_path, query_text, l_max, policy_name,
                              default_prob);
        }
        if (secure->parsed())
            return cmd_secure(opt, eve_path, bob_path, message_path, queries, tol, margin,
                              policy_name, default_prob);
        if (simulate->parsed())
            return cmd_simulate(opt, scenario_path, kind, trace_path, summary_path, seed_override);
        if (info->parsed())
            return cmd_info(opt, joint_path, op, target_csv, given_csv, x_csv, y_csv, pred, epsilon);
    } catch (const semcom::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
