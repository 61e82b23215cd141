#include "semcom/inference.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

// Atom-interned view of a ground program, for cheap forward chaining.
struct CompiledProgram {
    struct CompiledClause {
        int head = 0;
        std::vector<int> body;
        double prob = 1.0;
    };

    std::vector<CompiledClause> deterministic;
    std::vector<CompiledClause> probabilistic;  // the switch vector, in program order
    int atom_count = 0;
    int query = -1;

    explicit CompiledProgram(const GroundProgram& g, const Atom& q) {
        std::map<Atom, int> ids;
        auto intern = [&](const Atom& a) {
            auto [it, inserted] = ids.emplace(a, atom_count);
            if (inserted) ++atom_count;
            return it->second;
        };
        for (const auto& c : g.clauses) {
            CompiledClause cc;
            cc.head = intern(c.head);
            cc.prob = c.prob;
            for (const auto& b : c.body) cc.body.push_back(intern(b));
            (c.is_deterministic() ? deterministic : probabilistic).push_back(std::move(cc));
        }
        auto it = ids.find(q);
        query = it == ids.end() ? -1 : it->second;
    }

    // Least model of the deterministic clauses plus the switched-on
    // probabilistic ones; returns true when the query atom is derived.
    bool derives_query(std::uint64_t mask) const {
        std::vector<char> model(atom_count, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : deterministic) changed |= fire(c, model);
            for (std::size_t i = 0; i < probabilistic.size(); ++i)
                if (mask >> i & 1) changed |= fire(probabilistic[i], model);
            if (query >= 0 && model[query]) return true;
        }
        return query >= 0 && model[query];
    }

  private:
    static bool fire(const CompiledClause& c, std::vector<char>& model) {
        if (model[c.head]) return false;
        for (int b : c.body)
            if (!model[b]) return false;
        model[c.head] = 1;
        return true;
    }
};

struct PartialSum {
    double hit = 0.0;
    double total = 0.0;
};

PartialSum enumerate_range(const CompiledProgram& cp, std::uint64_t begin, std::uint64_t end) {
    const auto& switches = cp.probabilistic;
    PartialSum sum;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
        double w = 1.0;
        for (std::size_t i = 0; i < switches.size(); ++i)
            w *= (mask >> i & 1) ? switches[i].prob : 1.0 - switches[i].prob;
        sum.total += w;
        if (w > 0.0 && cp.derives_query(mask)) sum.hit += w;
    }
    return sum;
}

}  // namespace

GroundProgram relevant_subprogram(const GroundProgram& g, const Atom& q) {
    std::set<Atom> reachable{q};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : g.clauses) {
            if (!reachable.count(c.head)) continue;
            for (const auto& b : c.body)
                if (reachable.insert(b).second) changed = true;
        }
    }
    GroundProgram sub;
    for (const auto& c : g.clauses) {
        if (!reachable.count(c.head)) continue;
        sub.clauses.push_back(c);
        sub.head_set.insert(c.head);
        for (const auto& t : c.head.args) sub.herbrand.insert(t);
        for (const auto& a : c.body)
            for (const auto& t : a.args) sub.herbrand.insert(t);
    }
    return sub;
}

QueryResult query_probability(const GroundProgram& g, const Atom& q, const InferenceOptions& opts) {
    QueryResult result;
    if (!g.head_set.count(q)) {
        result.prob = opts.unmatched_prob;
        result.matched = false;
        result.worlds_enumerated = 0;
        return result;
    }
    result.matched = true;

    GroundProgram sub = relevant_subprogram(g, q);
    CompiledProgram cp(sub, q);

    const std::size_t k = cp.probabilistic.size();
    if (k > opts.max_switches || k > 63) throw BudgetExceededError(k, std::min<std::size_t>(opts.max_switches, 63));
    const std::uint64_t worlds = std::uint64_t{1} << k;
    result.worlds_enumerated = worlds;

    PartialSum sum;
    unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1 || worlds < 2 * jobs) {
        sum = enumerate_range(cp, 0, worlds);
    } else {
        std::vector<PartialSum> parts(jobs);
        std::vector<std::thread> workers;
        const std::uint64_t chunk = worlds / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            std::uint64_t begin = j * chunk;
            std::uint64_t end = (j + 1 == jobs) ? worlds : begin + chunk;
            workers.emplace_back([&, j, begin, end] { parts[j] = enumerate_range(cp, begin, end); });
        }
        for (auto& w : workers) w.join();
        for (const auto& p : parts) {
            sum.hit += p.hit;
            sum.total += p.total;
        }
    }
    // The exact value is in [0,1]; summation rounding can overshoot by a few ulp.
    result.prob = std::min(1.0, std::max(0.0, sum.hit));
    result.total_weight = sum.total;
    return result;
}

}  // namespace semcom
