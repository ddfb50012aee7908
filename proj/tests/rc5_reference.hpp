// Independent RC5-32 reference, written directly from Rivest's published
// description of the cipher. Test-only oracle: kept deliberately separate
// from the library implementation (different structure, no shared helpers)
// so the two can cross-check each other.
#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

namespace rc5ref {

struct Schedule {
    std::vector<std::uint32_t> s;
    int rounds;
};

inline std::uint32_t rol(std::uint32_t v, std::uint32_t n) {
    n %= 32;
    if (n == 0) return v;
    return (v << n) | (v >> (32 - n));
}

inline std::uint32_t ror(std::uint32_t v, std::uint32_t n) {
    n %= 32;
    if (n == 0) return v;
    return (v >> n) | (v << (32 - n));
}

// Key setup for w=32, b key bytes. L is loaded little-endian, S is filled
// with the magic constants and mixed 3*max(t,c) times.
inline Schedule setup(const std::uint8_t* key, int b, int r) {
    Schedule ks;
    ks.rounds = r;
    const int t = 2 * (r + 1);
    const int c = (b + 3) / 4 > 0 ? (b + 3) / 4 : 1;

    std::vector<std::uint32_t> l(c, 0);
    for (int i = b - 1; i >= 0; --i) l[i / 4] = (l[i / 4] << 8) + key[i];

    ks.s.assign(t, 0);
    ks.s[0] = 0xB7E15163u;
    for (int i = 1; i < t; ++i) ks.s[i] = ks.s[i - 1] + 0x9E3779B9u;

    std::uint32_t a = 0, bb = 0;
    int i = 0, j = 0;
    const int loops = 3 * (t > c ? t : c);
    for (int k = 0; k < loops; ++k) {
        a = ks.s[i] = rol(ks.s[i] + a + bb, 3);
        bb = l[j] = rol(l[j] + a + bb, a + bb);
        i = (i + 1) % t;
        j = (j + 1) % c;
    }
    return ks;
}

inline void encrypt(const Schedule& ks, const std::uint8_t in[8], std::uint8_t out[8]) {
    std::uint32_t a, b;
    std::memcpy(&a, in, 4);  // little-endian hosts only; fine for the test rig
    std::memcpy(&b, in + 4, 4);
    a += ks.s[0];
    b += ks.s[1];
    for (int i = 1; i <= ks.rounds; ++i) {
        a = rol(a ^ b, b) + ks.s[2 * i];
        b = rol(b ^ a, a) + ks.s[2 * i + 1];
    }
    std::memcpy(out, &a, 4);
    std::memcpy(out + 4, &b, 4);
}

inline void decrypt(const Schedule& ks, const std::uint8_t in[8], std::uint8_t out[8]) {
    std::uint32_t a, b;
    std::memcpy(&a, in, 4);
    std::memcpy(&b, in + 4, 4);
    for (int i = ks.rounds; i >= 1; --i) {
        b = ror(b - ks.s[2 * i + 1], a) ^ a;
        a = ror(a - ks.s[2 * i], b) ^ b;
    }
    b -= ks.s[1];
    a -= ks.s[0];
    std::memcpy(out, &a, 4);
    std::memcpy(out + 4, &b, 4);
}

}  // namespace rc5ref
