#include "semcom/metrics.hpp"

#include <algorithm>
#include <thread>

namespace semcom {

double query_entropy(const GroundProgram& g, const Atom& q, const EntropyConfig& cfg) {
    return binary_entropy(query_probability(g, q, cfg.inference()).prob);
}

double query_entropy(const Program& kb, const Atom& q, const EntropyConfig& cfg) {
    return query_entropy(ground(kb), q, cfg);
}

UncertaintyReport kb_uncertainty(const GroundProgram& g, const EntropyConfig& cfg) {
    UncertaintyReport report;
    report.head_count = g.head_set.size();
    if (g.head_set.empty()) {
        report.empty = true;
        return report;
    }

    std::vector<Atom> heads(g.head_set.begin(), g.head_set.end());
    std::sort(heads.begin(), heads.end(),
              [](const Atom& a, const Atom& b) { return to_string(a) < to_string(b); });

    report.per_query.resize(heads.size());
    auto compute = [&](std::size_t begin, std::size_t end) {
        InferenceOptions opts = cfg.inference();
        opts.jobs = 1;  // parallelism is over queries here
        for (std::size_t i = begin; i < end; ++i) {
            QueryEntropy qe;
            qe.query = heads[i];
            qe.prob = query_probability(g, heads[i], opts).prob;
            qe.entropy = binary_entropy(qe.prob);
            report.per_query[i] = std::move(qe);
        }
    };

    unsigned jobs = std::max(1u, cfg.jobs);
    if (jobs == 1 || heads.size() < 2 * jobs) {
        compute(0, heads.size());
    } else {
        std::vector<std::thread> workers;
        std::size_t chunk = heads.size() / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            std::size_t begin = j * chunk;
            std::size_t end = (j + 1 == jobs) ? heads.size() : begin + chunk;
            workers.emplace_back(compute, begin, end);
        }
        for (auto& w : workers) w.join();
    }

    double sum = 0.0;
    for (const auto& qe : report.per_query) sum += qe.entropy;
    report.value = sum / static_cast<double>(report.per_query.size());
    return report;
}

UncertaintyReport kb_uncertainty(const Program& kb, const EntropyConfig& cfg) {
    return kb_uncertainty(ground(kb), cfg);
}

double semantic_content(const Program& kb, const Clause& m, AssimilationPolicy policy,
                        const EntropyConfig& cfg) {
    return kb_uncertainty(assimilate(kb, m, policy), cfg).value - kb_uncertainty(kb, cfg).value;
}

}  // namespace semcom
