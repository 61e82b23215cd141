#ifndef SEMCOM_GROUNDING_HPP
#define SEMCOM_GROUNDING_HPP

#include <set>
#include <string>
#include <vector>

#include "semcom/ast.hpp"

namespace semcom {

// A ground clause has no variables and no comparisons (satisfied
// comparisons are evaluated away during grounding).
struct GroundClause {
    double prob = 1.0;
    Atom head;
    std::vector<Atom> body;
    std::size_t source_index = 0;  // position of the originating clause in the Program

    bool is_deterministic() const { return prob >= 1.0; }

    Clause to_clause() const {
        Clause c;
        c.prob = prob;
        c.head = head;
        c.body.assign(body.begin(), body.end());
        return c;
    }
};

struct GroundProgram {
    std::vector<GroundClause> clauses;
    std::set<Term> herbrand;           // constants and integers of the ground program
    std::set<Atom> head_set;           // distinct heads of the ground clauses
    std::vector<std::string> diagnostics;  // comparisons dropped for non-integer operands
};

// Bottom-up grounding seeded by facts: a clause instance is emitted only
// when each of its body atoms is the head of an already-emitted instance.
// Comparisons over ground integers are evaluated; satisfied ones are
// deleted from the body, anything else drops the instance (non-integer
// operands additionally leave a diagnostic). Each ground instance of a
// probabilistic clause is an independent choice point, so duplicate
// source clauses yield duplicate ground clauses.
GroundProgram ground(const Program& program);

std::string canonical(const GroundClause& c);

}  // namespace semcom

#endif  // SEMCOM_GROUNDING_HPP
