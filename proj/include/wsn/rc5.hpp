#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wsn/types.hpp"

namespace wsn {

// RC5-32/r/16: 32-bit words, configurable rounds, 16-byte keys. Word loads
// and stores are little-endian per Rivest's definition.

using Block = std::array<std::uint8_t, 8>;
using SecretKey = std::array<std::uint8_t, 16>;

struct ExpandedKey {
    std::vector<std::uint32_t> words;  // 2*(rounds+1) entries
    unsigned rounds = 0;

    std::size_t byte_size() const { return words.size() * 4; }
};

// rounds must be in [1, 32]. The expanded table is 8*(rounds+1) bytes; the
// default of 8 rounds gives the 72-byte table the radio stack budgets for.
ExpandedKey expand_key(const SecretKey& key, unsigned rounds);

Block encrypt_block(const ExpandedKey& ek, const Block& in);
Block decrypt_block(const ExpandedKey& ek, const Block& in);

inline constexpr unsigned kDefaultRounds = 8;

}  // namespace wsn
