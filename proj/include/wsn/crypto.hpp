#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsn/rc5.hpp"
#include "wsn/types.hpp"

namespace wsn {

using Mac8 = std::array<std::uint8_t, 8>;

// IV = source id (2 bytes BE) || sequence (2 bytes BE) || 4 zero bytes.
// Unique per (key, packet) within a run because (src, seq) never repeats.
Block make_iv(NodeId src, std::uint16_t seq);

// RC5 in output-feedback mode: the keystream is successive encryptions of the
// IV, XORed onto the data. Length-preserving and an involution.
std::vector<std::uint8_t> ofb_crypt(const ExpandedKey& ek, const Block& iv,
                                    std::span<const std::uint8_t> data);

// CBC-MAC with a 4-byte big-endian length prefix, zero padding to the block
// size, zero IV; the tag is the final chaining block. The length prefix keeps
// `data` and `data || 0x00` from colliding.
Mac8 cbc_mac(const ExpandedKey& ek, std::span<const std::uint8_t> data);

// The wire MAC covers exactly: encrypted payload, application handler id,
// sequence number, source id. Destination and payload_len are not covered;
// the next hop is rewritten at every forwarding step.
Mac8 packet_mac(const ExpandedKey& ek, std::span<const std::uint8_t> enc_payload,
                std::uint8_t handler, std::uint16_t seq, NodeId src);

struct Sealed {
    std::vector<std::uint8_t> payload;
    Mac8 mac;
};

// Encrypts the payload under (src, seq) and tags it. Payloads are capped at
// the 14-byte wire budget.
Sealed seal(const ExpandedKey& ek, NodeId src, std::uint16_t seq, std::uint8_t handler,
            std::span<const std::uint8_t> plain);

// Verifies the tag and decrypts. Authentication failure is a value, not a
// crash: it feeds the authentication-failure rule.
std::optional<std::vector<std::uint8_t>> open(const ExpandedKey& ek, NodeId src,
                                              std::uint16_t seq, std::uint8_t handler,
                                              std::span<const std::uint8_t> enc_payload,
                                              const Mac8& mac);

inline constexpr std::size_t kMaxPayload = 14;

// Truncated end-to-end tag carried inside the sealed reading so the sink can
// detect in-flight alteration by intermediaries that re-MAC correctly.
std::array<std::uint8_t, 2> e2e_tag(const ExpandedKey& origin_key,
                                    std::span<const std::uint8_t> plain);

}  // namespace wsn
