#include "wsn/rc5.hpp"

#include <algorithm>

namespace wsn {

namespace {

constexpr std::uint32_t kP32 = 0xB7E15163u;
constexpr std::uint32_t kQ32 = 0x9E3779B9u;

inline std::uint32_t rotl32(std::uint32_t x, std::uint32_t k) {
    k &= 31;
    return k ? (x << k) | (x >> (32 - k)) : x;
}

inline std::uint32_t rotr32(std::uint32_t x, std::uint32_t k) {
    k &= 31;
    return k ? (x >> k) | (x << (32 - k)) : x;
}

inline std::uint32_t load_le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

inline void store_le(std::uint32_t v, std::uint8_t* p) {
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
    p[2] = static_cast<std::uint8_t>(v >> 16);
    p[3] = static_cast<std::uint8_t>(v >> 24);
}

}  // namespace

ExpandedKey expand_key(const SecretKey& key, unsigned rounds) {
    if (rounds < 1 || rounds > 32)
        throw ConfigError("rc5 rounds must be in [1,32], got " + std::to_string(rounds));

    const std::size_t t = 2 * (rounds + 1);
    const std::size_t c = key.size() / 4;

    std::uint32_t l[4];
    for (std::size_t i = 0; i < c; ++i) l[i] = load_le(key.data() + 4 * i);

    ExpandedKey ek;
    ek.rounds = rounds;
    ek.words.resize(t);
    ek.words[0] = kP32;
    for (std::size_t i = 1; i < t; ++i) ek.words[i] = ek.words[i - 1] + kQ32;

    std::uint32_t a = 0, b = 0;
    std::size_t i = 0, j = 0;
    const std::size_t mixes = 3 * std::max(t, c);
    for (std::size_t k = 0; k < mixes; ++k) {
        a = ek.words[i] = rotl32(ek.words[i] + a + b, 3);
        b = l[j] = rotl32(l[j] + a + b, a + b);
        i = (i + 1) % t;
        j = (j + 1) % c;
    }
    return ek;
}

Block encrypt_block(const ExpandedKey& ek, const Block& in) {
    std::uint32_t a = load_le(in.data()) + ek.words[0];
    std::uint32_t b = load_le(in.data() + 4) + ek.words[1];
    for (unsigned r = 1; r <= ek.rounds; ++r) {
        a = rotl32(a ^ b, b) + ek.words[2 * r];
        b = rotl32(b ^ a, a) + ek.words[2 * r + 1];
    }
    Block out;
    store_le(a, out.data());
    store_le(b, out.data() + 4);
    return out;
}

Block decrypt_block(const ExpandedKey& ek, const Block& in) {
    std::uint32_t a = load_le(in.data());
    std::uint32_t b = load_le(in.data() + 4);
    for (unsigned r = ek.rounds; r >= 1; --r) {
        b = rotr32(b - ek.words[2 * r + 1], a) ^ a;
        a = rotr32(a - ek.words[2 * r], b) ^ b;
    }
    b -= ek.words[1];
    a -= ek.words[0];
    Block out;
    store_le(a, out.data());
    store_le(b, out.data() + 4);
    return out;
}

}  // namespace wsn
