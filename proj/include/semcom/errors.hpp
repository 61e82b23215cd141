#ifndef SEMCOM_ERRORS_HPP
#define SEMCOM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semcom {

// Base class for everything the toolkit can throw. The CLI maps any
// Error to exit code 1; usage problems are handled by the CLI itself.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
    SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

struct ProbabilityRangeError : Error {
    explicit ProbabilityRangeError(double value)
        : Error("probability " + std::to_string(value) + " outside [0,1]"), value(value) {}
    double value;
};

struct RangeRestrictionError : Error {
    explicit RangeRestrictionError(const std::string& variable)
        : Error("variable " + variable + " does not occur in any body atom"), variable(variable) {}
    std::string variable;
};

struct BudgetExceededError : Error {
    BudgetExceededError(std::size_t switches, std::size_t cap)
        : Error("enumeration over " + std::to_string(switches) + " probabilistic clauses exceeds cap " +
                std::to_string(cap)),
          switches(switches),
          cap(cap) {}
    std::size_t switches;
    std::size_t cap;
};

struct DomainError : Error {
    using Error::Error;
};

struct InvalidPMFError : Error {
    using Error::Error;
};

struct UnknownVariableError : Error {
    explicit UnknownVariableError(const std::string& name)
        : Error("unknown variable: " + name), name(name) {}
    std::string name;
};

struct ZeroProbabilityEventError : Error {
    ZeroProbabilityEventError() : Error("conditioning event has probability zero") {}
};

struct EmptyPoolError : Error {
    EmptyPoolError() : Error("candidate pool is empty") {}
};

struct InvalidBeliefError : Error {
    using Error::Error;
};

struct NoFeasibleMessageError : Error {
    explicit NoFeasibleMessageError(double l_max)
        : Error("no candidate satisfies the length bound " + std::to_string(l_max)) {}
};

struct AllObservedError : Error {
    AllObservedError() : Error("every source index has already been observed") {}
};

struct ZeroProbabilityEvidenceError : Error {
    ZeroProbabilityEvidenceError() : Error("observed assignment has probability zero") {}
};

struct EmptySetError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace semcom

#endif  // SEMCOM_ERRORS_HPP
