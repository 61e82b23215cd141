#ifndef SEMCOM_WIRE_HPP
#define SEMCOM_WIRE_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "semcom/ast.hpp"
#include "semcom/infotheory.hpp"

namespace semcom {

// CRC-32 (polynomial 0x04C11DB7, reflected, init and final xor all-ones).
std::uint32_t crc32(std::span<const std::uint8_t> data);

// A clause on the wire: canonical text bytes plus a CRC-32 trailer.
struct WireMessage {
    std::vector<std::uint8_t> payload;
    std::uint32_t checksum = 0;

    std::size_t length_bits() const { return payload.size() * 8 + 32; }
};

WireMessage encode_message(const Clause& m);

// Parses the payload back into a clause; corrupted payloads surface as
// parse errors, which is why delivery is gated on the checksum instead.
Clause decode_message(const WireMessage& w);

bool checksum_ok(const WireMessage& w);

// L(m): payload bits plus the 32-bit checksum.
std::size_t message_length(const Clause& m);

struct TransmitResult {
    WireMessage received;
    bool crc_ok = false;
};

// Sends the message through a BSC: every payload and checksum bit is
// flipped independently with probability epsilon.
TransmitResult transmit(const WireMessage& w, const ChannelSpec& channel, std::mt19937_64& rng);

}  // namespace semcom

#endif  // SEMCOM_WIRE_HPP
