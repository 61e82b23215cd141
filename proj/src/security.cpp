#include "semcom/security.hpp"

#include <cmath>

namespace semcom {

bool is_opaque(const Program& k_eve, const Clause& m, const Atom& q, double tol,
               AssimilationPolicy policy, const EntropyConfig& cfg) {
    double before = query_entropy(k_eve, q, cfg);
    double after = query_entropy(assimilate(k_eve, m, policy), q, cfg);
    return std::abs(before - after) <= tol;
}

bool is_useful(const Program& k_bob, const Clause& m, const Atom& q, double margin,
               AssimilationPolicy policy, const EntropyConfig& cfg) {
    double before = query_entropy(k_bob, q, cfg);
    double after = query_entropy(assimilate(k_bob, m, policy), q, cfg);
    return before - after > margin;
}

SecurityReport check_security(const Program& k_eve, const Program& k_bob, const Clause& m,
                              const Atom& q, double tol, double margin, AssimilationPolicy policy,
                              const EntropyConfig& cfg) {
    SecurityReport report;
    report.eve_entropy_before = query_entropy(k_eve, q, cfg);
    report.eve_entropy_after = query_entropy(assimilate(k_eve, m, policy), q, cfg);
    report.bob_entropy_before = query_entropy(k_bob, q, cfg);
    report.bob_entropy_after = query_entropy(assimilate(k_bob, m, policy), q, cfg);
    report.opaque = std::abs(report.eve_entropy_before - report.eve_entropy_after) <= tol;
    report.useful = report.bob_entropy_before - report.bob_entropy_after > margin;
    report.secure = report.opaque && report.useful;
    return report;
}

}  // namespace semcom
