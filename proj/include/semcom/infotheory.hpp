#ifndef SEMCOM_INFOTHEORY_HPP
#define SEMCOM_INFOTHEORY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace semcom {

// Base-2 binary entropy with 0*log(1/0) = 0. Throws DomainError outside [0,1].
double binary_entropy(double p);

struct JointVariable {
    std::string name;
    std::vector<std::int64_t> domain;
};

// Dense joint distribution over named finite-domain variables.
// Probabilities must be nonnegative and sum to 1 within 1e-9.
class JointPMF {
  public:
    using Assignment = std::vector<std::int64_t>;  // one value per variable, in order

    JointPMF(std::vector<JointVariable> variables, std::vector<double> table);

    // Builds from explicit assignment rows; unlisted assignments get
    // probability 0. Rows must be complete and in-domain.
    static JointPMF from_rows(std::vector<JointVariable> variables,
                              const std::vector<std::pair<Assignment, double>>& rows);

    static JointPMF uniform(std::vector<JointVariable> variables);

    const std::vector<JointVariable>& variables() const { return variables_; }
    const std::vector<double>& table() const { return table_; }
    std::size_t size() const { return table_.size(); }

    std::size_t variable_index(const std::string& name) const;  // throws UnknownVariableError
    Assignment decode(std::size_t flat) const;
    std::size_t encode(const Assignment& assignment) const;

    double prob(const Assignment& assignment) const { return table_[encode(assignment)]; }

  private:
    JointPMF() = default;
    std::vector<JointVariable> variables_;
    std::vector<double> table_;     // row-major over the variable domains
    std::vector<std::size_t> strides_;
};

// Shannon entropy in bits of the full joint, or of the marginal over a
// subset of variables.
double entropy(const JointPMF& pmf);
double entropy(const JointPMF& pmf, const std::vector<std::string>& names);

// H(targets | given) = H(targets u given) - H(given).
double conditional_entropy(const JointPMF& pmf, const std::vector<std::string>& targets,
                           const std::vector<std::string>& given);

// Entropy of the joint restricted to an event and renormalized.
// Throws ZeroProbabilityEventError when the event has probability 0.
using EventPredicate = std::function<bool(const JointPMF::Assignment&)>;
double conditional_entropy_event(const JointPMF& pmf, const EventPredicate& event);

// I(X;Y) = H(X) - H(X|Y); symmetric and nonnegative.
double mutual_information(const JointPMF& pmf, const std::vector<std::string>& xs,
                          const std::vector<std::string>& ys);

// Marginalizes onto a subset of variables (order as given).
JointPMF marginal(const JointPMF& pmf, const std::vector<std::string>& names);

// Posterior over all variables given exact values for some of them.
// Throws ZeroProbabilityEventError when the evidence has probability 0.
JointPMF condition(const JointPMF& pmf, const std::map<std::string, std::int64_t>& evidence);

// Binary symmetric channel with crossover probability epsilon.
struct ChannelSpec {
    double epsilon = 0.0;
};

// 1 - H2(epsilon) bits per channel use.
double bsc_capacity(const ChannelSpec& spec);

struct SlepianWolfRates {
    double h_x = 0.0;          // rate for the directly coded source
    double h_y_given_x = 0.0;  // rate for the source coded against side information
    double h_joint = 0.0;      // total rate H(X,Y)
    double h_y = 0.0;
    double savings = 0.0;      // H(Y) - H(Y|X)
};

SlepianWolfRates slepian_wolf_rates(const JointPMF& pmf, const std::vector<std::string>& xs,
                                    const std::vector<std::string>& ys);

}  // namespace semcom

#endif  // SEMCOM_INFOTHEORY_HPP
