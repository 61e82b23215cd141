#ifndef SEMCOM_METRICS_HPP
#define SEMCOM_METRICS_HPP

#include "semcom/infotheory.hpp"
#include "semcom/inference.hpp"

namespace semcom {

struct EntropyConfig {
    // Probability assumed for a query no clause head matches (a random
    // guess by default, giving entropy 1).
    double unmatched_query_prob = 0.5;
    // All entropies are in bits.
    static constexpr double log_base = 2.0;
    // Passed through to the inference engine.
    std::size_t max_switches = 24;
    unsigned jobs = 1;

    InferenceOptions inference() const {
        return InferenceOptions{max_switches, unmatched_query_prob, jobs};
    }
};

struct QueryEntropy {
    Atom query;
    double prob = 0.0;
    double entropy = 0.0;
};

struct UncertaintyReport {
    double value = 0.0;                  // mean entropy over the head set
    std::vector<QueryEntropy> per_query; // sorted by canonical atom text
    std::size_t head_count = 0;
    bool empty = false;                  // no ground heads: vacuous average
};

// Entropy of one query against a knowledge base.
double query_entropy(const Program& kb, const Atom& q, const EntropyConfig& cfg = {});
double query_entropy(const GroundProgram& g, const Atom& q, const EntropyConfig& cfg = {});

// Mean query entropy over the distinct ground heads of the grounded KB.
UncertaintyReport kb_uncertainty(const Program& kb, const EntropyConfig& cfg = {});
UncertaintyReport kb_uncertainty(const GroundProgram& g, const EntropyConfig& cfg = {});

// Change in KB uncertainty caused by assimilating m; negative means the
// message made the knowledge base more certain on average.
double semantic_content(const Program& kb, const Clause& m, AssimilationPolicy policy,
                        const EntropyConfig& cfg = {});

}  // namespace semcom

#endif  // SEMCOM_METRICS_HPP
