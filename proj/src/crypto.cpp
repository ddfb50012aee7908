#include "wsn/crypto.hpp"

#include <cstring>

namespace wsn {

Block make_iv(NodeId src, std::uint16_t seq) {
    Block iv{};
    iv[0] = static_cast<std::uint8_t>(src >> 8);
    iv[1] = static_cast<std::uint8_t>(src);
    iv[2] = static_cast<std::uint8_t>(seq >> 8);
    iv[3] = static_cast<std::uint8_t>(seq);
    return iv;
}

std::vector<std::uint8_t> ofb_crypt(const ExpandedKey& ek, const Block& iv,
                                    std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> out(data.begin(), data.end());
    Block pad = iv;
    std::size_t off = 0;
    while (off < out.size()) {
        pad = encrypt_block(ek, pad);
        const std::size_t n = std::min(pad.size(), out.size() - off);
        for (std::size_t i = 0; i < n; ++i) out[off + i] ^= pad[i];
        off += n;
    }
    return out;
}

Mac8 cbc_mac(const ExpandedKey& ek, std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> framed;
    framed.reserve(4 + data.size() + 8);
    const std::uint32_t len = static_cast<std::uint32_t>(data.size());
    framed.push_back(static_cast<std::uint8_t>(len >> 24));
    framed.push_back(static_cast<std::uint8_t>(len >> 16));
    framed.push_back(static_cast<std::uint8_t>(len >> 8));
    framed.push_back(static_cast<std::uint8_t>(len));
    framed.insert(framed.end(), data.begin(), data.end());
    while (framed.size() % 8 != 0) framed.push_back(0);

    Block chain{};
    for (std::size_t off = 0; off < framed.size(); off += 8) {
        for (std::size_t i = 0; i < 8; ++i) chain[i] ^= framed[off + i];
        chain = encrypt_block(ek, chain);
    }
    return chain;
}

Mac8 packet_mac(const ExpandedKey& ek, std::span<const std::uint8_t> enc_payload,
                std::uint8_t handler, std::uint16_t seq, NodeId src) {
    std::vector<std::uint8_t> covered;
    covered.reserve(enc_payload.size() + 5);
    covered.insert(covered.end(), enc_payload.begin(), enc_payload.end());
    covered.push_back(handler);
    covered.push_back(static_cast<std::uint8_t>(seq >> 8));
    covered.push_back(static_cast<std::uint8_t>(seq));
    covered.push_back(static_cast<std::uint8_t>(src >> 8));
    covered.push_back(static_cast<std::uint8_t>(src));
    return cbc_mac(ek, covered);
}

Sealed seal(const ExpandedKey& ek, NodeId src, std::uint16_t seq, std::uint8_t handler,
            std::span<const std::uint8_t> plain) {
    if (plain.size() > kMaxPayload)
        throw ConfigError("payload exceeds " + std::to_string(kMaxPayload) + " bytes");
    Sealed s;
    s.payload = ofb_crypt(ek, make_iv(src, seq), plain);
    s.mac = packet_mac(ek, s.payload, handler, seq, src);
    return s;
}

std::optional<std::vector<std::uint8_t>> open(const ExpandedKey& ek, NodeId src,
                                              std::uint16_t seq, std::uint8_t handler,
                                              std::span<const std::uint8_t> enc_payload,
                                              const Mac8& mac) {
    const Mac8 expect = packet_mac(ek, enc_payload, handler, seq, src);
    if (std::memcmp(expect.data(), mac.data(), expect.size()) != 0) return std::nullopt;
    return ofb_crypt(ek, make_iv(src, seq), enc_payload);
}

std::array<std::uint8_t, 2> e2e_tag(const ExpandedKey& origin_key,
                                    std::span<const std::uint8_t> plain) {
    const Mac8 full = cbc_mac(origin_key, plain);
    return {full[0], full[1]};
}

}  // namespace wsn
