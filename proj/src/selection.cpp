#include "semcom/selection.hpp"

#include <algorithm>
#include <cmath>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

SelectionOutcome rank(const std::vector<Clause>& candidates,
                      const std::function<double(const Clause&)>& score) {
    SelectionOutcome outcome;
    outcome.ranking.reserve(candidates.size());
    for (const auto& m : candidates) outcome.ranking.emplace_back(m, score(m));
    std::sort(outcome.ranking.begin(), outcome.ranking.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second < b.second;
                  return canonical(a.first) < canonical(b.first);
              });
    outcome.chosen = outcome.ranking.front().first;
    outcome.score = outcome.ranking.front().second;
    outcome.feasible_count = outcome.ranking.size();
    return outcome;
}

}  // namespace

void SenderBelief::validate() const {
    if (hypotheses.empty()) throw InvalidBeliefError("belief has no hypotheses");
    double sum = 0.0;
    for (const auto& h : hypotheses) {
        if (h.weight < 0.0) throw InvalidBeliefError("negative belief weight");
        sum += h.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidBeliefError("belief weights sum to " + std::to_string(sum));
}

SelectionOutcome select_for_kb(const Program& kb, const CandidatePool& pool,
                               AssimilationPolicy policy, const EntropyConfig& cfg) {
    if (pool.messages.empty()) throw EmptyPoolError();
    return rank(pool.messages, [&](const Clause& m) {
        return kb_uncertainty(assimilate(kb, m, policy), cfg).value;
    });
}

SelectionOutcome select_expected(const SenderBelief& belief, const CandidatePool& pool,
                                 AssimilationPolicy policy, const EntropyConfig& cfg) {
    if (pool.messages.empty()) throw EmptyPoolError();
    belief.validate();
    return rank(pool.messages, [&](const Clause& m) {
        double expected = 0.0;
        for (const auto& h : belief.hypotheses)
            expected += h.weight * kb_uncertainty(assimilate(h.kb, m, policy), cfg).value;
        return expected;
    });
}

SelectionOutcome select_for_query(const Program& kb, const CandidatePool& pool, const Atom& q,
                                  AssimilationPolicy policy, const EntropyConfig& cfg) {
    if (pool.messages.empty()) throw EmptyPoolError();
    return rank(pool.messages, [&](const Clause& m) {
        return query_entropy(assimilate(kb, m, policy), q, cfg);
    });
}

SelectionOutcome select_for_query_constrained(const Program& kb, const CandidatePool& pool,
                                              const Atom& q, double l_max,
                                              const LengthFn& length_fn, AssimilationPolicy policy,
                                              const EntropyConfig& cfg) {
    if (pool.messages.empty()) throw EmptyPoolError();
    std::vector<Clause> feasible;
    for (const auto& m : pool.messages)
        if (length_fn(m) <= l_max) feasible.push_back(m);
    if (feasible.empty()) throw NoFeasibleMessageError(l_max);
    SelectionOutcome outcome = rank(feasible, [&](const Clause& m) {
        return query_entropy(assimilate(kb, m, policy), q, cfg);
    });
    return outcome;
}

}  // namespace semcom
