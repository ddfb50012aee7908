#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wsn/rng.hpp"
#include "wsn/types.hpp"

namespace wsn {

struct DataBias {
    double offset = 0.0;
    double sigma = 0.0;  // variance inflation on fabricated readings
};

struct Displacement {
    double dx = 0.0;
    double dy = 0.0;
};

// Behavior overrides for a physically compromised node. A compromised node
// keeps its keys, so everything it transmits authenticates hop-wise; its
// payload alterations surface only at the sink's end-to-end check.
struct AttackProfile {
    double drop_rate = 0.0;    // selective forwarding; 1.0 = blackhole
    SimTime delay_ticks = 0;   // message delay attack
    double alter_rate = 0.0;   // message alteration (pre-MAC bit flips)
    double replay_rate = 0.0;  // message replay (duplicate transmission)
    bool sinkhole = false;     // beacon a false location next to the sink
    double jam_rate = 0.0;     // per-tick probability of a colliding noise frame
    DataBias data_bias;        // spurious sensed results
    double bogus_query_rate = 0.0;  // per sensing tick
    double byzantine_duty = 0.0;    // fraction of epochs spent behaving honestly
    std::optional<Displacement> relocate_by;  // applied at activation
    bool code_delta = false;                  // beacon a changed code digest
    std::optional<std::uint16_t> collusion_group;

    bool is_zero() const;
    void validate() const;
};

// Node failure modes; a faulty node corrupts frames after MACing them, which
// is exactly what the hop-wise authentication-failure rule catches.
struct FaultProfile {
    enum class Pattern : std::uint8_t { Persistent, Transient, Probabilistic };

    double alter_rate = 0.0;      // random message alteration (post-MAC)
    double broadcast_rate = 0.0;  // random junk broadcast per sensing tick
    double sense_error_sigma = 0.0;
    double drop_rate = 0.0;
    Pattern pattern = Pattern::Persistent;
    std::size_t transient_epochs = 10;

    bool is_zero() const;
    void validate() const;
};

struct CollusionSpec {
    enum class Direction : std::uint8_t { BadMouth, FalsePraise };
    std::uint16_t group = 0;
    NodeId target = 0;
    Direction direction = Direction::BadMouth;
};

struct CompromiseEntry {
    NodeId node = 0;
    SimTime at = 0;  // activation; never 0, the bootstrap network is clean
    std::optional<AttackProfile> attack;
    std::optional<FaultProfile> fault;
};

struct CompromiseSchedule {
    std::vector<CompromiseEntry> entries;
    std::vector<CollusionSpec> collusions;

    void validate(std::size_t node_count, NodeId sink) const;
};

enum class ForwardAction : std::uint8_t { Forward, Drop, Alter, Delay, Replay };

// Samples the relay behavior with fixed priority drop > alter > delay >
// replay > forward. A zero profile consumes no randomness, so activating it
// cannot perturb the trace.
ForwardAction decide_forward(const AttackProfile& p, RandomStream& stream);
ForwardAction decide_forward(const FaultProfile& p, RandomStream& stream);

// Byzantine intermittency, quantized to trust epochs: returns true when the
// node plays honest this epoch. duty=0.5 alternates honest/misbehaving.
bool byzantine_honest_epoch(double duty, std::uint64_t epoch_index);

// value = truth + offset + noise(sigma); a zero bias draws nothing.
double fabricate_reading(const DataBias& bias, double true_value, RandomStream& stream);

// Whether a fault expresses itself this epoch given its pattern.
bool fault_expresses(const FaultProfile& p, std::uint64_t epochs_since_onset,
                     RandomStream& stream);

}  // namespace wsn
