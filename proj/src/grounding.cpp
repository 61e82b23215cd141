#include "semcom/grounding.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

using Substitution = std::map<std::string, Term>;

Term apply(const Term& t, const Substitution& subst) {
    if (t.kind != Term::Kind::Variable) return t;
    auto it = subst.find(t.name);
    return it == subst.end() ? t : it->second;
}

Atom apply(const Atom& a, const Substitution& subst) {
    Atom out;
    out.predicate = a.predicate;
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(apply(t, subst));
    return out;
}

bool match(const Atom& pattern, const Atom& ground_atom, Substitution& subst) {
    if (pattern.predicate != ground_atom.predicate || pattern.args.size() != ground_atom.args.size())
        return false;
    Substitution added;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& p = pattern.args[i];
        const Term& g = ground_atom.args[i];
        if (p.kind == Term::Kind::Variable) {
            auto bound = subst.find(p.name);
            if (bound != subst.end()) {
                if (!(bound->second == g)) return false;
            } else {
                auto pending = added.find(p.name);
                if (pending != added.end()) {
                    if (!(pending->second == g)) return false;
                } else {
                    added.emplace(p.name, g);
                }
            }
        } else if (!(p == g)) {
            return false;
        }
    }
    for (auto& [name, term] : added) subst.emplace(name, term);
    return true;
}

enum class CompareOutcome { Satisfied, Unsatisfied, NotInteger };

CompareOutcome evaluate(const Comparison& cmp, const Substitution& subst) {
    Term lhs = apply(cmp.lhs, subst);
    Term rhs = apply(cmp.rhs, subst);
    if (lhs.kind != Term::Kind::Integer || rhs.kind != Term::Kind::Integer)
        return CompareOutcome::NotInteger;
    bool ok = false;
    switch (cmp.op) {
        case CompareOp::Ge: ok = lhs.value >= rhs.value; break;
        case CompareOp::Gt: ok = lhs.value > rhs.value; break;
        case CompareOp::Le: ok = lhs.value <= rhs.value; break;
        case CompareOp::Lt: ok = lhs.value < rhs.value; break;
        case CompareOp::Eq: ok = lhs.value == rhs.value; break;
        case CompareOp::Ne: ok = lhs.value != rhs.value; break;
    }
    return ok ? CompareOutcome::Satisfied : CompareOutcome::Unsatisfied;
}

struct Grounder {
    explicit Grounder(const Program& program) : program(program) {}

    const Program& program;
    GroundProgram out;
    std::vector<Atom> derived;                       // derivation order, for deterministic matching
    std::set<Atom> derived_set;
    std::vector<std::set<std::string>> handled;      // per clause: canonical bindings already decided

    void run() {
        handled.resize(program.clauses.size());
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t ci = 0; ci < program.clauses.size(); ++ci) {
                Substitution subst;
                changed |= instantiate(ci, 0, subst);
            }
        }
        std::stable_sort(out.clauses.begin(), out.clauses.end(),
                         [](const GroundClause& a, const GroundClause& b) {
                             return a.source_index < b.source_index;
                         });
        for (const auto& c : out.clauses) {
            out.head_set.insert(c.head);
            collect_terms(c.head);
            for (const auto& a : c.body) collect_terms(a);
        }
    }

    void collect_terms(const Atom& a) {
        for (const auto& t : a.args) out.herbrand.insert(t);
    }

    // Depth-first match of the clause's body atoms against derived atoms,
    // then comparison evaluation on the fully bound instance.
    bool instantiate(std::size_t clause_index, std::size_t body_pos, Substitution& subst) {
        const Clause& clause = program.clauses[clause_index];
        while (body_pos < clause.body.size() && std::holds_alternative<Comparison>(clause.body[body_pos]))
            ++body_pos;

        if (body_pos == clause.body.size()) return finalize(clause_index, subst);

        const Atom& pattern = std::get<Atom>(clause.body[body_pos]);
        bool changed = false;
        // Snapshot: atoms derived during this sweep only extend later sweeps.
        std::size_t limit = derived.size();
        for (std::size_t i = 0; i < limit; ++i) {
            Substitution extended = subst;
            if (match(pattern, derived[i], extended))
                changed |= instantiate(clause_index, body_pos + 1, extended);
        }
        return changed;
    }

    bool finalize(std::size_t clause_index, const Substitution& subst) {
        const Clause& clause = program.clauses[clause_index];
        std::string key = binding_key(subst);
        if (handled[clause_index].count(key)) return false;
        handled[clause_index].insert(key);

        for (const auto& lit : clause.body) {
            if (const auto* cmp = std::get_if<Comparison>(&lit)) {
                switch (evaluate(*cmp, subst)) {
                    case CompareOutcome::Satisfied:
                        break;
                    case CompareOutcome::Unsatisfied:
                        return false;
                    case CompareOutcome::NotInteger:
                        out.diagnostics.push_back("dropped instance of clause " +
                                                  std::to_string(clause_index + 1) +
                                                  ": comparison " + to_string(*cmp) +
                                                  " has non-integer operands under " + key);
                        return false;
                }
            }
        }

        GroundClause g;
        g.prob = clause.prob;
        g.head = apply(clause.head, subst);
        g.source_index = clause_index;
        for (const auto& lit : clause.body)
            if (const auto* a = std::get_if<Atom>(&lit)) g.body.push_back(apply(*a, subst));
        out.clauses.push_back(g);
        if (!derived_set.count(g.head)) {
            derived_set.insert(g.head);
            derived.push_back(g.head);
        }
        return true;
    }

    static std::string binding_key(const Substitution& subst) {
        std::string key;
        for (const auto& [name, term] : subst) {
            key += name;
            key += '=';
            key += to_string(term);
            key += ';';
        }
        return key;
    }
};

}  // namespace

GroundProgram ground(const Program& program) {
    Grounder g(program);
    g.run();
    return g.out;
}

std::string canonical(const GroundClause& c) { return canonical(c.to_clause()); }

}  // namespace semcom
