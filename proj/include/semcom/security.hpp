#ifndef SEMCOM_SECURITY_HPP
#define SEMCOM_SECURITY_HPP

#include "semcom/metrics.hpp"

namespace semcom {

struct SecurityReport {
    double eve_entropy_before = 0.0;
    double eve_entropy_after = 0.0;
    double bob_entropy_before = 0.0;
    double bob_entropy_after = 0.0;
    bool opaque = false;
    bool useful = false;
    bool secure = false;  // opaque && useful
};

// Assimilating m leaves the eavesdropper's entropy for q unchanged
// within tol. Equality in exact arithmetic; tol absorbs rounding.
bool is_opaque(const Program& k_eve, const Clause& m, const Atom& q, double tol,
               AssimilationPolicy policy, const EntropyConfig& cfg = {});

// Assimilating m drops the intended receiver's entropy for q by more
// than margin.
bool is_useful(const Program& k_bob, const Clause& m, const Atom& q, double margin,
               AssimilationPolicy policy, const EntropyConfig& cfg = {});

SecurityReport check_security(const Program& k_eve, const Program& k_bob, const Clause& m,
                              const Atom& q, double tol, double margin, AssimilationPolicy policy,
                              const EntropyConfig& cfg = {});

}  // namespace semcom

#endif  // SEMCOM_SECURITY_HPP
