#ifndef SEMCOM_SESSION_HPP
#define SEMCOM_SESSION_HPP

#include <optional>
#include <variant>

#include "semcom/das.hpp"
#include "semcom/selection.hpp"
#include "semcom/wire.hpp"

namespace semcom {

enum class SelectionMode { Ukb, Query, QueryConstrained };

const char* to_string(SelectionMode mode);

struct SessionPolicy {
    SelectionMode mode = SelectionMode::Ukb;
    std::optional<Atom> query;  // required for the query modes
    double l_max = std::numeric_limits<double>::infinity();
};

struct SessionConfig {
    ChannelSpec channel;
    // Optional per-round crossover schedule; overrides channel.epsilon
    // for rounds it covers (the last entry repeats past the end).
    std::vector<double> epsilon_schedule;
    int max_retransmissions = 0;  // extra attempts after the first
    int rounds = 1;
    SessionPolicy policy;
    AssimilationPolicy assimilation = AssimilationPolicy::Union;
    double stop_delta = 0.0;  // stop once query entropy <= delta (query modes)
    std::uint64_t rng_seed = 0;
    // Scalar physical-layer factor applied to L(m) for the length
    // constraint and the capacity-normalized cost.
    double rate_factor = 1.0;
    double belief_sigma = 0.05;  // width of the Gaussian belief reweighting
    EntropyConfig entropy;
};

// Exact knowledge of the receiver's KB, or a weighted belief over it.
using Sender = std::variant<Program, SenderBelief>;

struct SessionRound {
    int round = 0;  // 1-based
    Clause selected;
    std::size_t length_bits = 0;
    int attempts = 0;
    bool delivered = false;
    std::size_t channel_uses = 0;  // attempts * length_bits
    double receiver_u_after = 0.0;
    std::optional<double> query_entropy_after;
    std::vector<double> belief_weights;  // empty for an exact-K sender
};

struct SessionTrace {
    double initial_u = 0.0;
    std::optional<double> initial_query_entropy;
    std::vector<SessionRound> rounds;
    StopReason stop_reason = StopReason::RoundsExhausted;
    std::size_t total_bits_on_air = 0;
    // Sum over rounds of rate_factor * L(m) / C(epsilon); unbounded when
    // some round saw a zero-capacity channel.
    double capacity_cost = 0.0;
    bool capacity_unbounded = false;
    Program receiver_final;
};

// The two-layer loop: the sender picks a clause (semantic layer), ships
// it over the BSC with CRC-gated retransmission (technical layer), and
// the receiver's uncertainty is fed back error-free. A belief sender is
// reweighted after every delivery by a Gaussian likelihood of the
// observed uncertainty against each hypothesis' prediction.
SessionTrace run_session(const CandidatePool& pool, const Sender& sender,
                         const Program& receiver_kb, const SessionConfig& cfg);

}  // namespace semcom

#endif  // SEMCOM_SESSION_HPP
