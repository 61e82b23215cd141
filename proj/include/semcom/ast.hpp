#ifndef SEMCOM_AST_HPP
#define SEMCOM_AST_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace semcom {

// A term is a lowercase constant, an integer, or an uppercase variable.
struct Term {
    enum class Kind { Constant, Integer, Variable };

    Kind kind = Kind::Constant;
    std::string name;          // Constant / Variable
    std::int64_t value = 0;    // Integer

    static Term constant(std::string n) { return Term{Kind::Constant, std::move(n), 0}; }
    static Term integer(std::int64_t v) { return Term{Kind::Integer, {}, v}; }
    static Term variable(std::string n) { return Term{Kind::Variable, std::move(n), 0}; }

    bool is_ground() const { return kind != Kind::Variable; }

    friend bool operator==(const Term& a, const Term& b) {
        if (a.kind != b.kind) return false;
        return a.kind == Kind::Integer ? a.value == b.value : a.name == b.name;
    }
    friend bool operator<(const Term& a, const Term& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.kind == Kind::Integer ? a.value < b.value : a.name < b.name;
    }
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    bool is_ground() const {
        for (const auto& t : args)
            if (!t.is_ground()) return false;
        return true;
    }

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.predicate != b.predicate) return a.predicate < b.predicate;
        return a.args < b.args;
    }
};

enum class CompareOp { Ge, Gt, Le, Lt, Eq, Ne };

const char* to_string(CompareOp op);

// Integer comparison builtin; evaluable only once both sides are ground integers.
struct Comparison {
    CompareOp op = CompareOp::Ge;
    Term lhs;
    Term rhs;

    friend bool operator==(const Comparison& a, const Comparison& b) {
        return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
    }
};

using BodyLiteral = std::variant<Atom, Comparison>;

// A probability-annotated definite clause. A fact is a clause with an
// empty body; an omitted probability means 1.0.
struct Clause {
    double prob = 1.0;
    Atom head;
    std::vector<BodyLiteral> body;

    bool is_fact() const { return body.empty(); }
    bool is_deterministic() const { return prob >= 1.0; }

    // Head-and-body equality, probability ignored (replace-policy identity).
    bool same_structure(const Clause& other) const;

    friend bool operator==(const Clause& a, const Clause& b) {
        return a.prob == b.prob && a.same_structure(b);
    }
};

// An ordered multiset of clauses. Duplicates are permitted and meaningful:
// two copies of a probabilistic fact act as independent evidence.
struct Program {
    std::vector<Clause> clauses;

    bool empty() const { return clauses.empty(); }
    std::size_t size() const { return clauses.size(); }
};

enum class AssimilationPolicy { Union, Replace };

const char* to_string(AssimilationPolicy policy);
AssimilationPolicy assimilation_policy_from_string(const std::string& s);

// Union appends m (keeping duplicates, which yields noisy-or behaviour);
// replace first removes every clause with the same head and body.
Program assimilate(const Program& kb, const Clause& m, AssimilationPolicy policy);

// Deterministic canonical text. Probabilities print in shortest
// round-trip form with a forced decimal point, atoms with no internal
// spaces, body literals separated by ", ".
std::string format_probability(double p);
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Comparison& c);
std::string canonical(const Clause& c);
std::string canonical(const Program& p);  // one clause per line

}  // namespace semcom

#endif  // SEMCOM_AST_HPP
