#ifndef SEMCOM_PARSER_HPP
#define SEMCOM_PARSER_HPP

#include <string_view>

#include "semcom/ast.hpp"

namespace semcom {

// Parses the probabilistic-logic text format:
//
//   % comment to end of line
//   0.2::a.
//   0.5::a :- b.
//   1.0::pass(X) :- mark(X,M), pass_score(S), M >= S.
//
// Clauses end with '.'; an omitted probability means 1.0. Every clause
// must be range-restricted: a variable in the head or in a comparison
// has to occur in at least one body atom.
//
// Throws SyntaxError, ProbabilityRangeError or RangeRestrictionError.
Program parse_program(std::string_view text);

// Single-clause convenience (exactly one clause expected).
Clause parse_clause(std::string_view text);

// Parses a ground-atom query such as "a" or "pass(tom)".
Atom parse_atom(std::string_view text);

}  // namespace semcom

#endif  // SEMCOM_PARSER_HPP
