#include "semcom/infotheory.hpp"

#include <algorithm>
#include <cmath>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

constexpr double kSumTolerance = 1e-9;

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy: p must be in [0,1]");
    return plogp(p) + plogp(1.0 - p);
}

JointPMF::JointPMF(std::vector<JointVariable> variables, std::vector<double> table)
    : variables_(std::move(variables)), table_(std::move(table)) {
    std::size_t cells = 1;
    for (const auto& v : variables_) {
        if (v.domain.empty()) throw InvalidPMFError("variable " + v.name + " has an empty domain");
        cells *= v.domain.size();
    }
    if (table_.size() != cells)
        throw InvalidPMFError("table has " + std::to_string(table_.size()) + " entries, expected " +
                              std::to_string(cells));
    double sum = 0.0;
    for (double p : table_) {
        if (p < 0.0) throw InvalidPMFError("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw InvalidPMFError("probabilities sum to " + std::to_string(sum));
    strides_.assign(variables_.size(), 1);
    for (std::size_t i = variables_.size(); i-- > 1;)
        strides_[i - 1] = strides_[i] * variables_[i].domain.size();
}

JointPMF JointPMF::from_rows(std::vector<JointVariable> variables,
                             const std::vector<std::pair<Assignment, double>>& rows) {
    std::size_t cells = 1;
    for (const auto& v : variables) {
        if (v.domain.empty()) throw InvalidPMFError("variable " + v.name + " has an empty domain");
        cells *= v.domain.size();
    }
    JointPMF pmf;
    pmf.variables_ = std::move(variables);
    pmf.table_.assign(cells, 0.0);
    pmf.strides_.assign(pmf.variables_.size(), 1);
    for (std::size_t i = pmf.variables_.size(); i-- > 1;)
        pmf.strides_[i - 1] = pmf.strides_[i] * pmf.variables_[i].domain.size();
    for (const auto& [assignment, p] : rows) pmf.table_[pmf.encode(assignment)] += p;
    return JointPMF(std::move(pmf.variables_), std::move(pmf.table_));  // revalidate
}

JointPMF JointPMF::uniform(std::vector<JointVariable> variables) {
    std::size_t cells = 1;
    for (const auto& v : variables) cells *= std::max<std::size_t>(1, v.domain.size());
    return JointPMF(std::move(variables), std::vector<double>(cells, 1.0 / cells));
}

std::size_t JointPMF::variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name == name) return i;
    throw UnknownVariableError(name);
}

JointPMF::Assignment JointPMF::decode(std::size_t flat) const {
    Assignment a(variables_.size());
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        std::size_t idx = flat / strides_[i];
        flat %= strides_[i];
        a[i] = variables_[i].domain[idx];
    }
    return a;
}

std::size_t JointPMF::encode(const Assignment& assignment) const {
    if (assignment.size() != variables_.size())
        throw InvalidPMFError("assignment arity mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        const auto& dom = variables_[i].domain;
        auto it = std::find(dom.begin(), dom.end(), assignment[i]);
        if (it == dom.end())
            throw InvalidPMFError("value " + std::to_string(assignment[i]) + " not in domain of " +
                                  variables_[i].name);
        flat += strides_[i] * static_cast<std::size_t>(it - dom.begin());
    }
    return flat;
}

double entropy(const JointPMF& pmf) {
    double h = 0.0;
    for (double p : pmf.table()) h += plogp(p);
    return h;
}

JointPMF marginal(const JointPMF& pmf, const std::vector<std::string>& names) {
    std::vector<std::size_t> indices;
    std::vector<JointVariable> vars;
    for (const auto& n : names) {
        std::size_t i = pmf.variable_index(n);
        indices.push_back(i);
        vars.push_back(pmf.variables()[i]);
    }
    std::vector<std::pair<JointPMF::Assignment, double>> rows;
    rows.reserve(pmf.size());
    for (std::size_t flat = 0; flat < pmf.size(); ++flat) {
        double p = pmf.table()[flat];
        if (p == 0.0) continue;
        auto full = pmf.decode(flat);
        JointPMF::Assignment sub(indices.size());
        for (std::size_t i = 0; i < indices.size(); ++i) sub[i] = full[indices[i]];
        rows.emplace_back(std::move(sub), p);
    }
    return JointPMF::from_rows(std::move(vars), rows);
}

double entropy(const JointPMF& pmf, const std::vector<std::string>& names) {
    return entropy(marginal(pmf, names));
}

namespace {

std::vector<std::string> concat_names(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& n : b) {
        if (std::find(a.begin(), a.end(), n) != a.end())
            throw InvalidPMFError("variable sets must be disjoint: " + n);
        out.push_back(n);
    }
    return out;
}

}  // namespace

double conditional_entropy(const JointPMF& pmf, const std::vector<std::string>& targets,
                           const std::vector<std::string>& given) {
    if (given.empty()) return entropy(pmf, targets);
    return entropy(pmf, concat_names(targets, given)) - entropy(pmf, given);
}

double conditional_entropy_event(const JointPMF& pmf, const EventPredicate& event) {
    double mass = 0.0;
    std::vector<double> restricted(pmf.size(), 0.0);
    for (std::size_t flat = 0; flat < pmf.size(); ++flat) {
        if (pmf.table()[flat] == 0.0) continue;
        if (event(pmf.decode(flat))) {
            restricted[flat] = pmf.table()[flat];
            mass += pmf.table()[flat];
        }
    }
    if (mass <= 0.0) throw ZeroProbabilityEventError();
    double h = 0.0;
    for (double p : restricted) h += plogp(p / mass);
    return h;
}

double mutual_information(const JointPMF& pmf, const std::vector<std::string>& xs,
                          const std::vector<std::string>& ys) {
    return entropy(pmf, xs) - conditional_entropy(pmf, xs, ys);
}

JointPMF condition(const JointPMF& pmf, const std::map<std::string, std::int64_t>& evidence) {
    std::vector<std::pair<std::size_t, std::int64_t>> fixed;
    for (const auto& [name, value] : evidence) fixed.emplace_back(pmf.variable_index(name), value);
    double mass = 0.0;
    std::vector<double> table(pmf.size(), 0.0);
    for (std::size_t flat = 0; flat < pmf.size(); ++flat) {
        double p = pmf.table()[flat];
        if (p == 0.0) continue;
        auto full = pmf.decode(flat);
        bool consistent = true;
        for (const auto& [idx, value] : fixed)
            if (full[idx] != value) { consistent = false; break; }
        if (consistent) {
            table[flat] = p;
            mass += p;
        }
    }
    if (mass <= 0.0) throw ZeroProbabilityEventError();
    for (double& p : table) p /= mass;
    return JointPMF(std::vector<JointVariable>(pmf.variables()), std::move(table));
}

double bsc_capacity(const ChannelSpec& spec) {
    if (!(spec.epsilon >= 0.0 && spec.epsilon <= 1.0))
        throw DomainError("bsc_capacity: epsilon must be in [0,1]");
    return 1.0 - binary_entropy(spec.epsilon);
}

SlepianWolfRates slepian_wolf_rates(const JointPMF& pmf, const std::vector<std::string>& xs,
                                    const std::vector<std::string>& ys) {
    SlepianWolfRates rates;
    rates.h_x = entropy(pmf, xs);
    rates.h_y = entropy(pmf, ys);
    rates.h_y_given_x = conditional_entropy(pmf, ys, xs);
    rates.h_joint = entropy(pmf, concat_names(xs, ys));
    rates.savings = rates.h_y - rates.h_y_given_x;
    return rates;
}

}  // namespace semcom
