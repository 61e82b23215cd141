#ifndef SEMCOM_DAS_HPP
#define SEMCOM_DAS_HPP

#include <optional>

#include "semcom/infotheory.hpp"
#include "semcom/metrics.hpp"

namespace semcom {

// Iterative acquisition from N distributed sources X_1..X_N (the joint's
// variables, in order). `observed` holds realized values for the indices
// acquired so far; `target` optionally gives Y = phi(X_1..X_N) as a
// value per flat joint index.
struct DasState {
    JointPMF joint;
    std::map<std::size_t, std::int64_t> observed;
    std::optional<std::vector<std::int64_t>> target;
};

enum class StopReason { TargetReached, RoundsExhausted, AllObserved, NoImprovement };

const char* to_string(StopReason reason);

struct DasRound {
    std::size_t chosen = 0;
    std::vector<std::pair<std::size_t, double>> scores;  // per remaining index
    double entropy_after = 0.0;
};

struct DasTrace {
    std::vector<DasRound> rounds;
    StopReason stop_reason = StopReason::RoundsExhausted;
    double initial_entropy = 0.0;
};

// One step of the conditional-entropy criterion: under the posterior
// given the observed values, score(n) = H(unobserved | obs) - H(X_n | obs)
// and the minimizing index is returned (ties to the lowest index). Since
// the first term is constant in n, this equals argmax H(X_n | obs).
std::pair<std::size_t, std::vector<std::pair<std::size_t, double>>>
select_source_entropy(const DasState& state);

struct DasStop {
    std::optional<int> max_rounds;
    std::optional<double> target_entropy;  // delta_H
};

// Greedy acquisition loop: select, reveal the realization's value for
// the chosen index, recondition. Stops when H(Y|obs) (or H(unobserved|obs)
// without a target) drops to delta_H, when rounds run out, or when
// everything is observed.
DasTrace run_das(const DasState& initial, const DasStop& stop,
                 const std::vector<std::int64_t>& realization);

// Semantic variant: nodes hold clauses; score(n) is the semantic content
// of node n's message for the current KB.
struct NodeMessage {
    std::size_t index = 0;
    Clause message;
};

std::pair<std::size_t, std::vector<std::pair<std::size_t, double>>>
select_source_semantic(const Program& kb, const std::vector<NodeMessage>& node_messages,
                       const std::vector<std::size_t>& remaining, AssimilationPolicy policy,
                       const EntropyConfig& cfg = {});

struct SemanticDasStop {
    std::optional<int> max_rounds;
    double min_improvement = 0.0;  // delta_U: stop once best score > -delta_U
};

struct SemanticDasResult {
    DasTrace trace;  // entropy_after rows carry the KB uncertainty trajectory
    Program kb;      // final assimilated knowledge base
};

SemanticDasResult run_semantic_das(const Program& kb, const std::vector<NodeMessage>& node_messages,
                                   const SemanticDasStop& stop, AssimilationPolicy policy,
                                   const EntropyConfig& cfg = {});

}  // namespace semcom

#endif  // SEMCOM_DAS_HPP
