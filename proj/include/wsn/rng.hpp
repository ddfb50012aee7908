#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>

namespace wsn {

// Deterministic PRNG (xoshiro256++) seeded via splitmix64. Hand-rolled so the
// draw sequences are identical on every platform and compiler.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

class RandomStream {
public:
    RandomStream() : RandomStream(0, "") {}

    RandomStream(std::uint64_t master_seed, const std::string& stream_id) {
        std::uint64_t sm = master_seed ^ fnv1a64(stream_id);
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi] inclusive.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        return lo + next_u64() % (hi - lo + 1);
    }

    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

    // Box-Muller; one draw consumed per call kept deterministic by discarding
    // the second variate.
    double normal(double mu, double sigma) {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        return mu + sigma * z;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Lazily created named streams, all derived from one master seed. Each entity
// draws from its own stream, so one entity's draw count never perturbs
// another's sequence.
class StreamSet {
public:
    explicit StreamSet(std::uint64_t master_seed) : master_seed_(master_seed) {}

    RandomStream& stream_for(const std::string& stream_id) {
        auto it = streams_.find(stream_id);
        if (it == streams_.end())
            it = streams_.emplace(stream_id, RandomStream(master_seed_, stream_id)).first;
        return it->second;
    }

    RandomStream& node_stream(std::uint16_t id) {
        return stream_for("node/" + std::to_string(id));
    }

    std::uint64_t master_seed() const { return master_seed_; }

private:
    std::uint64_t master_seed_;
    std::map<std::string, RandomStream> streams_;
};

}  // namespace wsn
