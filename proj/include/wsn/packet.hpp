#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsn/crypto.hpp"
#include "wsn/types.hpp"

namespace wsn {

enum class HandlerId : std::uint8_t {
    Data = 1,
    Ack = 2,
    Alert = 3,
    Vote = 4,
    Beacon = 5,
    Query = 6,
    TrustProbe = 7,
    IsolationNotice = 8,
};

const char* to_string(HandlerId h);

// 8-byte header: src(2) dst(2) handler(1) seq(2) payload_len(1), big-endian
// multi-byte fields. dst is the next hop (or 0xFFFF broadcast); src is the
// packet origin and never changes in flight.
struct PacketHeader {
    NodeId src = 0;
    NodeId dst = 0;
    HandlerId handler = HandlerId::Data;
    std::uint16_t seq = 0;
    std::uint8_t payload_len = 0;
};

inline constexpr std::size_t kHeaderBytes = 8;
inline constexpr std::size_t kMacBytes = 8;
inline constexpr std::size_t kMaxWireBytes = kHeaderBytes + kMaxPayload + kMacBytes;  // 30

struct Packet {
    PacketHeader header;
    std::vector<std::uint8_t> payload;  // sealed bytes, up to 14
    Mac8 mac{};

    std::size_t wire_size() const { return kHeaderBytes + payload.size() + kMacBytes; }
};

bool operator==(const Packet& a, const Packet& b);

// Bit-exact wire format. decode returns nullopt on any structural violation
// (short buffer, length mismatch, oversized payload, unknown handler); that
// is a codec error, distinct from authentication failure.
std::vector<std::uint8_t> encode(const Packet& p);
std::optional<Packet> decode(std::span<const std::uint8_t> wire);

// --- payload layouts ------------------------------------------------------
// Coordinates travel as decimeters in a uint16; values as milli-units in an
// int32. All fields big-endian.

std::uint16_t to_dm(double meters);
double from_dm(std::uint16_t dm);

// value(4) origin_x(2) origin_y(2) sensed_at(2) origin_id(2) = 12 bytes; the
// 2-byte end-to-end tag appended before sealing fills the 14-byte budget.
struct ReadingPayload {
    std::int32_t value_milli = 0;
    std::uint16_t origin_x_dm = 0;
    std::uint16_t origin_y_dm = 0;
    std::uint16_t sensed_at = 0;  // truncated tick
    NodeId origin = 0;

    std::vector<std::uint8_t> to_bytes() const;
    static std::optional<ReadingPayload> from_bytes(std::span<const std::uint8_t> b);
};

enum class AckKind : std::uint8_t { HopWise = 0, EndToEnd = 1 };

struct AckPayload {
    NodeId orig_src = 0;
    std::uint16_t orig_seq = 0;
    AckKind kind = AckKind::HopWise;
    // End-to-end acks are routed geographically back to the origin.
    std::uint16_t target_x_dm = 0;
    std::uint16_t target_y_dm = 0;

    std::vector<std::uint8_t> to_bytes() const;
    static std::optional<AckPayload> from_bytes(std::span<const std::uint8_t> b);
};

struct BeaconPayload {
    std::uint16_t x_dm = 0;
    std::uint16_t y_dm = 0;
    std::uint32_t code_digest = 0;
    std::uint16_t pdr_milli = 1000;

    std::vector<std::uint8_t> to_bytes() const;
    static std::optional<BeaconPayload> from_bytes(std::span<const std::uint8_t> b);
};

enum class AlertKind : std::uint8_t { Suspicion = 0, JamSuspected = 1 };

struct AlertPayload {
    AlertKind kind = AlertKind::Suspicion;
    NodeId suspect = 0;  // issuer itself for jam alarms
    std::uint8_t rule = 0;

    std::vector<std::uint8_t> to_bytes() const;
    static std::optional<AlertPayload> from_bytes(std::span<const std::uint8_t> b);
};

struct VotePayload {
    NodeId suspect = 0;
    std::uint8_t isolate = 0;  // 1 = isolate, 0 = keep
    std::uint16_t trust_claim_milli = 0;

    std::vector<std::uint8_t> to_bytes() const;
    static std::optional<VotePayload> from_bytes(std::span<const std::uint8_t> b);
};

enum class ProbeKind : std::uint8_t { Request = 0, Confirm = 1, Reject = 2 };

struct ProbePayload {
    ProbeKind kind = ProbeKind::Request;
    NodeId querier = 0;
    std::uint16_t probe_seq = 0;
    NodeId remote = 0;
    std::uint16_t remote_x_dm = 0;
    std::uint16_t remote_y_dm = 0;
    std::uint8_t budget = 0;

    std::vector<std::uint8_t> to_bytes() const;
    static std::optional<ProbePayload> from_bytes(std::span<const std::uint8_t> b);
};

struct NoticePayload {
    NodeId suspect = 0;

    std::vector<std::uint8_t> to_bytes() const;
    static std::optional<NoticePayload> from_bytes(std::span<const std::uint8_t> b);
};

}  // namespace wsn
