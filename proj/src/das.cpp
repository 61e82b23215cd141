#include "semcom/das.hpp"

#include <algorithm>
#include <cmath>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

std::map<std::string, std::int64_t> evidence_of(const DasState& state) {
    std::map<std::string, std::int64_t> evidence;
    for (const auto& [index, value] : state.observed)
        evidence.emplace(state.joint.variables().at(index).name, value);
    return evidence;
}

JointPMF posterior_of(const DasState& state) {
    auto evidence = evidence_of(state);
    if (evidence.empty()) return state.joint;
    try {
        return condition(state.joint, evidence);
    } catch (const ZeroProbabilityEventError&) {
        throw ZeroProbabilityEvidenceError();
    }
}

std::vector<std::size_t> remaining_of(const DasState& state) {
    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < state.joint.variables().size(); ++i)
        if (!state.observed.count(i)) remaining.push_back(i);
    return remaining;
}

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Entropy of Y = phi(X_1..X_N) under the given distribution.
double target_entropy(const JointPMF& posterior, const std::vector<std::int64_t>& phi) {
    std::map<std::int64_t, double> dist;
    for (std::size_t flat = 0; flat < posterior.size(); ++flat)
        dist[phi[flat]] += posterior.table()[flat];
    double h = 0.0;
    for (const auto& [value, p] : dist) h += plogp(p);
    return h;
}

// The stop metric: H(Y|obs) with a target, H(unobserved|obs) without.
double remaining_uncertainty(const DasState& state, const JointPMF& posterior) {
    if (state.target) return target_entropy(posterior, *state.target);
    auto remaining = remaining_of(state);
    if (remaining.empty()) return 0.0;
    std::vector<std::string> names;
    for (std::size_t i : remaining) names.push_back(state.joint.variables()[i].name);
    return entropy(posterior, names);
}

}  // namespace

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::TargetReached: return "target_reached";
        case StopReason::RoundsExhausted: return "rounds_exhausted";
        case StopReason::AllObserved: return "all_observed";
        case StopReason::NoImprovement: return "no_improvement";
    }
    return "?";
}

std::pair<std::size_t, std::vector<std::pair<std::size_t, double>>>
select_source_entropy(const DasState& state) {
    auto remaining = remaining_of(state);
    if (remaining.empty()) throw AllObservedError();

    JointPMF posterior = posterior_of(state);
    std::vector<std::string> remaining_names;
    for (std::size_t i : remaining) remaining_names.push_back(state.joint.variables()[i].name);
    double h_rest = entropy(posterior, remaining_names);

    std::vector<std::pair<std::size_t, double>> scores;
    scores.reserve(remaining.size());
    for (std::size_t n : remaining) {
        double h_n = entropy(posterior, {state.joint.variables()[n].name});
        scores.emplace_back(n, h_rest - h_n);
    }
    std::size_t best = scores.front().first;
    double best_score = scores.front().second;
    for (const auto& [n, s] : scores) {
        if (s < best_score) {  // ties keep the lowest index
            best = n;
            best_score = s;
        }
    }
    return {best, std::move(scores)};
}

DasTrace run_das(const DasState& initial, const DasStop& stop,
                 const std::vector<std::int64_t>& realization) {
    const auto& vars = initial.joint.variables();
    if (realization.size() != vars.size())
        throw ConfigError("realization must assign every variable");
    if (initial.joint.prob(realization) <= 0.0) throw ZeroProbabilityEvidenceError();
    if (initial.target && initial.target->size() != initial.joint.size())
        throw ConfigError("target table must cover every joint assignment");

    DasState state = initial;
    DasTrace trace;
    trace.initial_entropy = remaining_uncertainty(state, posterior_of(state));
    if (stop.target_entropy && trace.initial_entropy <= *stop.target_entropy) {
        trace.stop_reason = StopReason::TargetReached;
        return trace;
    }

    while (true) {
        if (remaining_of(state).empty()) {
            trace.stop_reason = StopReason::AllObserved;
            return trace;
        }
        if (stop.max_rounds && static_cast<int>(trace.rounds.size()) >= *stop.max_rounds) {
            trace.stop_reason = StopReason::RoundsExhausted;
            return trace;
        }

        DasRound round;
        auto [chosen, scores] = select_source_entropy(state);
        round.chosen = chosen;
        round.scores = std::move(scores);

        state.observed[chosen] = realization[chosen];
        round.entropy_after = remaining_uncertainty(state, posterior_of(state));
        trace.rounds.push_back(std::move(round));

        if (stop.target_entropy && trace.rounds.back().entropy_after <= *stop.target_entropy) {
            trace.stop_reason = StopReason::TargetReached;
            return trace;
        }
    }
}

std::pair<std::size_t, std::vector<std::pair<std::size_t, double>>>
select_source_semantic(const Program& kb, const std::vector<NodeMessage>& node_messages,
                       const std::vector<std::size_t>& remaining, AssimilationPolicy policy,
                       const EntropyConfig& cfg) {
    if (remaining.empty()) throw EmptySetError("no remaining nodes to select from");

    double u_now = kb_uncertainty(kb, cfg).value;
    std::vector<std::pair<std::size_t, double>> scores;
    for (std::size_t n : remaining) {
        auto it = std::find_if(node_messages.begin(), node_messages.end(),
                               [n](const NodeMessage& nm) { return nm.index == n; });
        if (it == node_messages.end())
            throw EmptySetError("no message for node " + std::to_string(n));
        double u_next = kb_uncertainty(assimilate(kb, it->message, policy), cfg).value;
        scores.emplace_back(n, u_next - u_now);
    }
    std::size_t best = scores.front().first;
    double best_score = scores.front().second;
    for (const auto& [n, s] : scores) {
        if (s < best_score) {
            best = n;
            best_score = s;
        }
    }
    return {best, std::move(scores)};
}

SemanticDasResult run_semantic_das(const Program& kb, const std::vector<NodeMessage>& node_messages,
                                   const SemanticDasStop& stop, AssimilationPolicy policy,
                                   const EntropyConfig& cfg) {
    if (node_messages.empty()) throw EmptySetError("no node messages");

    SemanticDasResult result;
    result.kb = kb;
    result.trace.initial_entropy = kb_uncertainty(kb, cfg).value;

    std::vector<std::size_t> remaining;
    for (const auto& nm : node_messages) remaining.push_back(nm.index);
    std::sort(remaining.begin(), remaining.end());

    while (true) {
        if (remaining.empty()) {
            result.trace.stop_reason = StopReason::AllObserved;
            return result;
        }
        if (stop.max_rounds && static_cast<int>(result.trace.rounds.size()) >= *stop.max_rounds) {
            result.trace.stop_reason = StopReason::RoundsExhausted;
            return result;
        }

        auto [chosen, scores] = select_source_semantic(result.kb, node_messages, remaining, policy, cfg);
        double best_score = scores.front().second;
        for (const auto& [n, s] : scores) best_score = std::min(best_score, s);
        if (best_score > -stop.min_improvement) {
            result.trace.stop_reason = StopReason::NoImprovement;
            return result;
        }

        auto it = std::find_if(node_messages.begin(), node_messages.end(),
                               [chosen = chosen](const NodeMessage& nm) { return nm.index == chosen; });
        result.kb = assimilate(result.kb, it->message, policy);

        DasRound round;
        round.chosen = chosen;
        round.scores = std::move(scores);
        round.entropy_after = kb_uncertainty(result.kb, cfg).value;
        result.trace.rounds.push_back(std::move(round));
        remaining.erase(std::remove(remaining.begin(), remaining.end(), chosen), remaining.end());
    }
}

}  // namespace semcom
