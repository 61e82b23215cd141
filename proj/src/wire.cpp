#include "semcom/wire.hpp"

#include <array>
#include <string>

#include "semcom/errors.hpp"
#include "semcom/parser.hpp"

namespace semcom {

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t crc = i;
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc & 1) ? (crc >> 1) ^ 0xEDB88320u : crc >> 1;  // reflected 0x04C11DB7
        table[i] = crc;
    }
    return table;
}

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    static const auto table = make_crc_table();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::uint8_t byte : data) crc = (crc >> 8) ^ table[(crc ^ byte) & 0xFFu];
    return crc ^ 0xFFFFFFFFu;
}

WireMessage encode_message(const Clause& m) {
    WireMessage w;
    std::string text = canonical(m);
    w.payload.assign(text.begin(), text.end());
    w.checksum = crc32(w.payload);
    return w;
}

Clause decode_message(const WireMessage& w) {
    return parse_clause(std::string(w.payload.begin(), w.payload.end()));
}

bool checksum_ok(const WireMessage& w) { return crc32(w.payload) == w.checksum; }

std::size_t message_length(const Clause& m) { return encode_message(m).length_bits(); }

TransmitResult transmit(const WireMessage& w, const ChannelSpec& channel, std::mt19937_64& rng) {
    if (!(channel.epsilon >= 0.0 && channel.epsilon <= 1.0))
        throw DomainError("transmit: epsilon must be in [0,1]");
    std::bernoulli_distribution flip(channel.epsilon);

    TransmitResult result;
    result.received = w;
    for (auto& byte : result.received.payload)
        for (int bit = 0; bit < 8; ++bit)
            if (flip(rng)) byte ^= static_cast<std::uint8_t>(1u << bit);
    for (int bit = 0; bit < 32; ++bit)
        if (flip(rng)) result.received.checksum ^= 1u << bit;

    result.crc_ok = checksum_ok(result.received);
    return result;
}

}  // namespace semcom
