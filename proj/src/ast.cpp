#include "semcom/ast.hpp"

#include <algorithm>
#include <charconv>

#include "semcom/errors.hpp"

namespace semcom {

const char* to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Ge: return ">=";
        case CompareOp::Gt: return ">";
        case CompareOp::Le: return "<=";
        case CompareOp::Lt: return "<";
        case CompareOp::Eq: return "==";
        case CompareOp::Ne: return "!=";
    }
    return "?";
}

const char* to_string(AssimilationPolicy policy) {
    return policy == AssimilationPolicy::Union ? "union" : "replace";
}

AssimilationPolicy assimilation_policy_from_string(const std::string& s) {
    if (s == "union") return AssimilationPolicy::Union;
    if (s == "replace") return AssimilationPolicy::Replace;
    throw ConfigError("unknown assimilation policy: " + s);
}

bool Clause::same_structure(const Clause& other) const {
    return head == other.head && body == other.body;
}

Program assimilate(const Program& kb, const Clause& m, AssimilationPolicy policy) {
    Program out;
    out.clauses.reserve(kb.clauses.size() + 1);
    if (policy == AssimilationPolicy::Union) {
        out.clauses = kb.clauses;
    } else {
        for (const auto& c : kb.clauses)
            if (!c.same_structure(m)) out.clauses.push_back(c);
    }
    out.clauses.push_back(m);
    return out;
}

std::string format_probability(double p) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p);
    std::string s(buf, ptr);
    // Force a decimal point so "1" prints as "1.0".
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

std::string to_string(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Integer: return std::to_string(t.value);
        case Term::Kind::Constant:
        case Term::Kind::Variable: return t.name;
    }
    return {};
}

std::string to_string(const Atom& a) {
    if (a.args.empty()) return a.predicate;
    std::string s = a.predicate;
    s += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) s += ',';
        s += to_string(a.args[i]);
    }
    s += ')';
    return s;
}

std::string to_string(const Comparison& c) {
    return to_string(c.lhs) + to_string(c.op) + to_string(c.rhs);
}

std::string canonical(const Clause& c) {
    std::string s = format_probability(c.prob);
    s += "::";
    s += to_string(c.head);
    if (!c.body.empty()) {
        s += " :- ";
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            if (i) s += ", ";
            if (const auto* atom = std::get_if<Atom>(&c.body[i]))
                s += to_string(*atom);
            else
                s += to_string(std::get<Comparison>(c.body[i]));
        }
    }
    s += '.';
    return s;
}

std::string canonical(const Program& p) {
    std::string s;
    for (const auto& c : p.clauses) {
        s += canonical(c);
        s += '\n';
    }
    return s;
}

}  // namespace semcom
