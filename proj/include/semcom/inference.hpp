#ifndef SEMCOM_INFERENCE_HPP
#define SEMCOM_INFERENCE_HPP

#include <cstdint>

#include "semcom/grounding.hpp"

namespace semcom {

struct InferenceOptions {
    // Cap on probabilistic clauses in the relevant subprogram; 2^cap
    // total choices are enumerated.
    std::size_t max_switches = 24;
    // Probability reported for a query that matches no clause head.
    double unmatched_prob = 0.5;
    // Worker threads for the enumeration; the sum is associative within
    // floating tolerance, so the result does not depend on the split.
    unsigned jobs = 1;
};

struct QueryResult {
    double prob = 0.0;
    bool matched = false;
    std::uint64_t worlds_enumerated = 0;
    // Sum of world weights, a sanity diagnostic that must be 1.
    double total_weight = 1.0;
};

// Clauses reachable from q in the head <- body dependency graph.
// Dropping the rest never changes the query probability.
GroundProgram relevant_subprogram(const GroundProgram& g, const Atom& q);

// Exact probability that q is in the least model of a random total
// choice: every probabilistic ground clause (prob < 1) is switched on
// independently with its probability, deterministic clauses are always
// on, and the weights of the choices deriving q are summed.
QueryResult query_probability(const GroundProgram& g, const Atom& q,
                              const InferenceOptions& opts = {});

}  // namespace semcom

#endif  // SEMCOM_INFERENCE_HPP
