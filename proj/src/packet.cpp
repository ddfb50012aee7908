#include "wsn/packet.hpp"

#include <algorithm>
#include <cmath>

namespace wsn {

namespace {

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint16_t get16(std::span<const std::uint8_t> b, std::size_t off) {
    return static_cast<std::uint16_t>((b[off] << 8) | b[off + 1]);
}

std::uint32_t get32(std::span<const std::uint8_t> b, std::size_t off) {
    return (static_cast<std::uint32_t>(b[off]) << 24) |
           (static_cast<std::uint32_t>(b[off + 1]) << 16) |
           (static_cast<std::uint32_t>(b[off + 2]) << 8) |
           static_cast<std::uint32_t>(b[off + 3]);
}

bool valid_handler(std::uint8_t h) {
    return h >= static_cast<std::uint8_t>(HandlerId::Data) &&
           h <= static_cast<std::uint8_t>(HandlerId::IsolationNotice);
}

}  // namespace

const char* to_string(HandlerId h) {
    switch (h) {
        case HandlerId::Data: return "DATA";
        case HandlerId::Ack: return "ACK";
        case HandlerId::Alert: return "ALERT";
        case HandlerId::Vote: return "VOTE";
        case HandlerId::Beacon: return "BEACON";
        case HandlerId::Query: return "QUERY";
        case HandlerId::TrustProbe: return "TRUST_PROBE";
        case HandlerId::IsolationNotice: return "ISOLATION_NOTICE";
    }
    return "?";
}

bool operator==(const Packet& a, const Packet& b) {
    return a.header.src == b.header.src && a.header.dst == b.header.dst &&
           a.header.handler == b.header.handler && a.header.seq == b.header.seq &&
           a.header.payload_len == b.header.payload_len && a.payload == b.payload &&
           a.mac == b.mac;
}

std::vector<std::uint8_t> encode(const Packet& p) {
    if (p.payload.size() > kMaxPayload || p.header.payload_len != p.payload.size())
        throw ConfigError("packet payload_len does not match payload");
    std::vector<std::uint8_t> out;
    out.reserve(p.wire_size());
    put16(out, p.header.src);
    put16(out, p.header.dst);
    out.push_back(static_cast<std::uint8_t>(p.header.handler));
    put16(out, p.header.seq);
    out.push_back(p.header.payload_len);
    out.insert(out.end(), p.payload.begin(), p.payload.end());
    out.insert(out.end(), p.mac.begin(), p.mac.end());
    return out;
}

std::optional<Packet> decode(std::span<const std::uint8_t> wire) {
    if (wire.size() < kHeaderBytes + kMacBytes) return std::nullopt;
    Packet p;
    p.header.src = get16(wire, 0);
    p.header.dst = get16(wire, 2);
    if (!valid_handler(wire[4])) return std::nullopt;
    p.header.handler = static_cast<HandlerId>(wire[4]);
    p.header.seq = get16(wire, 5);
    p.header.payload_len = wire[7];
    if (p.header.payload_len > kMaxPayload) return std::nullopt;
    if (wire.size() != kHeaderBytes + p.header.payload_len + kMacBytes) return std::nullopt;
    p.payload.assign(wire.begin() + kHeaderBytes,
                     wire.begin() + kHeaderBytes + p.header.payload_len);
    std::copy(wire.end() - kMacBytes, wire.end(), p.mac.begin());
    return p;
}

std::uint16_t to_dm(double meters) {
    double dm = std::round(meters * 10.0);
    if (dm < 0) dm = 0;
    if (dm > 65535) dm = 65535;
    return static_cast<std::uint16_t>(dm);
}

double from_dm(std::uint16_t dm) { return dm / 10.0; }

std::vector<std::uint8_t> ReadingPayload::to_bytes() const {
    std::vector<std::uint8_t> out;
    put32(out, static_cast<std::uint32_t>(value_milli));
    put16(out, origin_x_dm);
    put16(out, origin_y_dm);
    put16(out, sensed_at);
    put16(out, origin);
    return out;
}

std::optional<ReadingPayload> ReadingPayload::from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() < 12) return std::nullopt;
    ReadingPayload r;
    r.value_milli = static_cast<std::int32_t>(get32(b, 0));
    r.origin_x_dm = get16(b, 4);
    r.origin_y_dm = get16(b, 6);
    r.sensed_at = get16(b, 8);
    r.origin = get16(b, 10);
    return r;
}

std::vector<std::uint8_t> AckPayload::to_bytes() const {
    std::vector<std::uint8_t> out;
    put16(out, orig_src);
    put16(out, orig_seq);
    out.push_back(static_cast<std::uint8_t>(kind));
    if (kind == AckKind::EndToEnd) {
        put16(out, target_x_dm);
        put16(out, target_y_dm);
    }
    return out;
}

std::optional<AckPayload> AckPayload::from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() < 5) return std::nullopt;
    AckPayload a;
    a.orig_src = get16(b, 0);
    a.orig_seq = get16(b, 2);
    if (b[4] > 1) return std::nullopt;
    a.kind = static_cast<AckKind>(b[4]);
    if (a.kind == AckKind::EndToEnd) {
        if (b.size() < 9) return std::nullopt;
        a.target_x_dm = get16(b, 5);
        a.target_y_dm = get16(b, 7);
    }
    return a;
}

std::vector<std::uint8_t> BeaconPayload::to_bytes() const {
    std::vector<std::uint8_t> out;
    put16(out, x_dm);
    put16(out, y_dm);
    put32(out, code_digest);
    put16(out, pdr_milli);
    return out;
}

std::optional<BeaconPayload> BeaconPayload::from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() < 10) return std::nullopt;
    BeaconPayload p;
    p.x_dm = get16(b, 0);
    p.y_dm = get16(b, 2);
    p.code_digest = get32(b, 4);
    p.pdr_milli = get16(b, 8);
    return p;
}

std::vector<std::uint8_t> AlertPayload::to_bytes() const {
    std::vector<std::uint8_t> out;
    out.push_back(static_cast<std::uint8_t>(kind));
    put16(out, suspect);
    out.push_back(rule);
    return out;
}

std::optional<AlertPayload> AlertPayload::from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() < 4) return std::nullopt;
    if (b[0] > 1) return std::nullopt;
    AlertPayload a;
    a.kind = static_cast<AlertKind>(b[0]);
    a.suspect = get16(b, 1);
    a.rule = b[3];
    return a;
}

std::vector<std::uint8_t> VotePayload::to_bytes() const {
    std::vector<std::uint8_t> out;
    put16(out, suspect);
    out.push_back(isolate);
    put16(out, trust_claim_milli);
    return out;
}

std::optional<VotePayload> VotePayload::from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() < 5) return std::nullopt;
    VotePayload v;
    v.suspect = get16(b, 0);
    v.isolate = b[2];
    v.trust_claim_milli = get16(b, 3);
    return v;
}

std::vector<std::uint8_t> ProbePayload::to_bytes() const {
    std::vector<std::uint8_t> out;
    out.push_back(static_cast<std::uint8_t>(kind));
    put16(out, querier);
    put16(out, probe_seq);
    put16(out, remote);
    put16(out, remote_x_dm);
    put16(out, remote_y_dm);
    out.push_back(budget);
    return out;
}

std::optional<ProbePayload> ProbePayload::from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() < 12) return std::nullopt;
    if (b[0] > 2) return std::nullopt;
    ProbePayload p;
    p.kind = static_cast<ProbeKind>(b[0]);
    p.querier = get16(b, 1);
    p.probe_seq = get16(b, 3);
    p.remote = get16(b, 5);
    p.remote_x_dm = get16(b, 7);
    p.remote_y_dm = get16(b, 9);
    p.budget = b[11];
    return p;
}

std::vector<std::uint8_t> NoticePayload::to_bytes() const {
    std::vector<std::uint8_t> out;
    put16(out, suspect);
    return out;
}

std::optional<NoticePayload> NoticePayload::from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() < 2) return std::nullopt;
    NoticePayload n;
    n.suspect = get16(b, 0);
    return n;
}

}  // namespace wsn
