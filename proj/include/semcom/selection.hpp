#ifndef SEMCOM_SELECTION_HPP
#define SEMCOM_SELECTION_HPP

#include <functional>
#include <limits>

#include "semcom/metrics.hpp"

namespace semcom {

struct CandidatePool {
    std::vector<Clause> messages;
};

// The sender's statistical picture of the receiver's knowledge base:
// hypothesis A_i holds with weight p_i, weights summing to 1.
struct SenderBelief {
    struct Hypothesis {
        Program kb;
        double weight = 0.0;
    };
    std::vector<Hypothesis> hypotheses;

    void validate() const;  // throws InvalidBeliefError
};

struct SelectionOutcome {
    Clause chosen;
    double score = 0.0;
    // Feasible candidates sorted by ascending score, ties by canonical text.
    std::vector<std::pair<Clause, double>> ranking;
    std::size_t feasible_count = 0;
};

using LengthFn = std::function<double(const Clause&)>;

// argmin over the pool of the receiver-KB uncertainty after assimilation.
SelectionOutcome select_for_kb(const Program& kb, const CandidatePool& pool,
                               AssimilationPolicy policy, const EntropyConfig& cfg = {});

// argmin of the belief-weighted expected uncertainty.
SelectionOutcome select_expected(const SenderBelief& belief, const CandidatePool& pool,
                                 AssimilationPolicy policy, const EntropyConfig& cfg = {});

// argmin of the entropy of one target query after assimilation.
SelectionOutcome select_for_query(const Program& kb, const CandidatePool& pool, const Atom& q,
                                  AssimilationPolicy policy, const EntropyConfig& cfg = {});

// Same, restricted to messages with length_fn(m) <= l_max bits.
// Throws NoFeasibleMessageError when nothing fits.
SelectionOutcome select_for_query_constrained(const Program& kb, const CandidatePool& pool,
                                              const Atom& q, double l_max,
                                              const LengthFn& length_fn, AssimilationPolicy policy,
                                              const EntropyConfig& cfg = {});

}  // namespace semcom

#endif  // SEMCOM_SELECTION_HPP
