#include "semcom/session.hpp"

#include <cmath>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

void reweight(SenderBelief& belief, const Clause& delivered, double u_observed,
              AssimilationPolicy policy, double sigma, const EntropyConfig& cfg) {
    double sum = 0.0;
    std::vector<double> weights(belief.hypotheses.size());
    for (std::size_t i = 0; i < belief.hypotheses.size(); ++i) {
        auto& h = belief.hypotheses[i];
        h.kb = assimilate(h.kb, delivered, policy);
        double u_predicted = kb_uncertainty(h.kb, cfg).value;
        double diff = u_observed - u_predicted;
        weights[i] = h.weight * std::exp(-diff * diff / (2.0 * sigma * sigma));
        sum += weights[i];
    }
    if (sum <= 0.0) return;  // all likelihoods underflowed; keep the prior
    for (std::size_t i = 0; i < belief.hypotheses.size(); ++i)
        belief.hypotheses[i].weight = weights[i] / sum;
}

}  // namespace

const char* to_string(SelectionMode mode) {
    switch (mode) {
        case SelectionMode::Ukb: return "ukb";
        case SelectionMode::Query: return "query";
        case SelectionMode::QueryConstrained: return "query_constrained";
    }
    return "?";
}

SessionTrace run_session(const CandidatePool& pool, const Sender& sender,
                         const Program& receiver_kb, const SessionConfig& cfg) {
    if (pool.messages.empty()) throw EmptyPoolError();
    if (cfg.rounds < 1) throw ConfigError("rounds must be >= 1");
    if (cfg.max_retransmissions < 0) throw ConfigError("max_retransmissions must be >= 0");
    if (cfg.stop_delta < 0.0) throw ConfigError("stop_delta must be >= 0");
    const bool query_mode = cfg.policy.mode != SelectionMode::Ukb;
    if (query_mode && !cfg.policy.query) throw ConfigError("query policy requires a query atom");

    const bool exact = std::holds_alternative<Program>(sender);
    if (!exact && query_mode)
        throw ConfigError("a belief sender supports only the ukb policy");

    Program sender_kb = exact ? std::get<Program>(sender) : Program{};
    SenderBelief belief;
    if (!exact) {
        belief = std::get<SenderBelief>(sender);
        belief.validate();
    }

    std::mt19937_64 rng(cfg.rng_seed);
    Program receiver = receiver_kb;

    SessionTrace trace;
    trace.initial_u = kb_uncertainty(receiver, cfg.entropy).value;
    if (query_mode) {
        trace.initial_query_entropy = query_entropy(receiver, *cfg.policy.query, cfg.entropy);
        if (*trace.initial_query_entropy <= cfg.stop_delta) {
            trace.stop_reason = StopReason::TargetReached;
            trace.receiver_final = receiver;
            return trace;
        }
    }

    auto scaled_length = [&](const Clause& m) {
        return cfg.rate_factor * static_cast<double>(message_length(m));
    };

    for (int r = 1; r <= cfg.rounds; ++r) {
        double epsilon = cfg.channel.epsilon;
        if (!cfg.epsilon_schedule.empty()) {
            std::size_t idx = std::min<std::size_t>(r - 1, cfg.epsilon_schedule.size() - 1);
            epsilon = cfg.epsilon_schedule[idx];
        }
        ChannelSpec channel{epsilon};

        SelectionOutcome outcome;
        switch (cfg.policy.mode) {
            case SelectionMode::Ukb:
                outcome = exact ? select_for_kb(sender_kb, pool, cfg.assimilation, cfg.entropy)
                                : select_expected(belief, pool, cfg.assimilation, cfg.entropy);
                break;
            case SelectionMode::Query:
                outcome = select_for_query(sender_kb, pool, *cfg.policy.query, cfg.assimilation,
                                           cfg.entropy);
                break;
            case SelectionMode::QueryConstrained:
                outcome = select_for_query_constrained(sender_kb, pool, *cfg.policy.query,
                                                       cfg.policy.l_max, scaled_length,
                                                       cfg.assimilation, cfg.entropy);
                break;
        }

        // The no-improvement stop needs the true uncertainty, which only
        // an exact-K sender has; a belief sender's expectation mixes
        // vacuous averages (an empty hypothesis scores U = 0), so belief
        // sessions run on the round budget instead.
        if (cfg.policy.mode == SelectionMode::Ukb && exact) {
            if (outcome.score >= kb_uncertainty(sender_kb, cfg.entropy).value) {
                trace.stop_reason = StopReason::NoImprovement;
                trace.receiver_final = receiver;
                return trace;
            }
        }

        SessionRound row;
        row.round = r;
        row.selected = outcome.chosen;

        WireMessage wire = encode_message(outcome.chosen);
        row.length_bits = wire.length_bits();
        TransmitResult transmitted;
        while (!row.delivered && row.attempts < 1 + cfg.max_retransmissions) {
            ++row.attempts;
            transmitted = transmit(wire, channel, rng);
            row.delivered = transmitted.crc_ok;
        }
        row.channel_uses = static_cast<std::size_t>(row.attempts) * row.length_bits;
        trace.total_bits_on_air += row.channel_uses;

        double capacity = bsc_capacity(channel);
        if (capacity <= 0.0)
            trace.capacity_unbounded = true;
        else
            trace.capacity_cost += cfg.rate_factor * static_cast<double>(row.length_bits) / capacity;

        if (row.delivered) {
            Clause got = decode_message(transmitted.received);
            receiver = assimilate(receiver, got, cfg.assimilation);
            if (exact)
                sender_kb = assimilate(sender_kb, got, cfg.assimilation);
        }

        // Error-free feedback of the receiver's uncertainty.
        row.receiver_u_after = kb_uncertainty(receiver, cfg.entropy).value;
        if (query_mode)
            row.query_entropy_after = query_entropy(receiver, *cfg.policy.query, cfg.entropy);
        if (!exact) {
            if (row.delivered)
                reweight(belief, row.selected, row.receiver_u_after, cfg.assimilation,
                         cfg.belief_sigma, cfg.entropy);
            for (const auto& h : belief.hypotheses) row.belief_weights.push_back(h.weight);
        }

        trace.rounds.push_back(row);

        if (query_mode && *row.query_entropy_after <= cfg.stop_delta) {
            trace.stop_reason = StopReason::TargetReached;
            trace.receiver_final = receiver;
            return trace;
        }
    }

    trace.stop_reason = StopReason::RoundsExhausted;
    trace.receiver_final = receiver;
    return trace;
}

}  // namespace semcom
