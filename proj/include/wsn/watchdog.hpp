#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "wsn/packet.hpp"
#include "wsn/trust.hpp"
#include "wsn/types.hpp"

namespace wsn {

struct WatchdogConfig {
    double p_watch = 0.25;
    std::size_t watch_capacity = 8;
    SimTime t_ack = 80;   // 3 x airtime + processing allowance
    SimTime t_watch = 0;  // third-party forwarding deadline; 0 = 4 x t_ack
    double k_sigma = 3.0;
    std::size_t m_min_samples = 4;
    std::size_t window_epochs = 10;
    double delta_traffic = 0.5;
    double theta_pdr = 0.8;
    std::size_t pdr_min_packets = 4;
    double eps_loc = 5.0;
    double sigma_min = 0.0;              // floor for the data-validation std
    double expected_tx_per_epoch = 0.0;  // 0 = derive from sensing period
    // Evidence weights fed into the trust engine.
    double w_neg_ack = 2.0;
    double w_neg_auth = 1.0;
    double w_neg_data = 1.0;
    double w_neg_traffic = 1.0;
    double w_pos_beacon = 0.1;

    void validate() const;
    SimTime effective_t_watch() const { return t_watch > 0 ? t_watch : 4 * t_ack; }
};

// One watched packet: either one of our own sends awaiting its hop-wise ack,
// or an overheard packet some neighbor is expected to relay.
struct WatchEntry {
    NodeId origin = 0;
    std::uint16_t seq = 0;
    NodeId forwarder = 0;
    SimTime deadline = 0;
    bool own_send = false;
    bool forward_seen = false;
};

// Bounded promiscuous-mode buffer; the oldest entry is evicted when full and
// entries expire at their deadline.
class WatchBuffer {
public:
    explicit WatchBuffer(std::size_t capacity) : capacity_(capacity) {}

    void add(WatchEntry entry);
    WatchEntry* match(NodeId origin, std::uint16_t seq, NodeId forwarder);
    // Removes expired entries, invoking fn(entry) for each.
    template <typename Fn>
    void expire(SimTime now, Fn&& fn) {
        while (!entries_.empty() && entries_.front().deadline <= now) {
            WatchEntry e = entries_.front();
            entries_.pop_front();
            fn(e);
        }
    }
    void drop(NodeId origin, std::uint16_t seq, NodeId forwarder);

    std::size_t size() const { return entries_.size(); }
    const std::deque<WatchEntry>& entries() const { return entries_; }

private:
    std::size_t capacity_;
    std::deque<WatchEntry> entries_;
};

// Message-acknowledgment rule: the three cases of an expired ack timer.
// (i) acked in time: positive evidence for the hop; (ii) not acked but the
// forward was overheard: channel ambiguity, no judgment; (iii) neither:
// negative evidence.
enum class AckOutcome : std::uint8_t { Positive, NoJudgment, Negative };
AckOutcome resolve_ack_case(bool ack_received, bool forward_seen);

// Data-validation rule: judge one reported value against the latest readings
// of at least m other distinct neighbors. nullopt = not enough samples.
// false = deviates more than k sigma from the neighborhood mean.
std::optional<bool> judge_reading(double value, const std::vector<double>& others,
                                  std::size_t m_min, double k_sigma, double sigma_min);

// Traffic-awareness rule: origination count within expected * (1 + delta).
bool traffic_within_band(double observed, double expected, double delta);

enum class BeaconJudgment : std::uint8_t { Consistent, MemoryViolation, LocationViolation };

// Memory-consistency + in-situ rules on consecutive status beacons.
BeaconJudgment check_beacon(const BeaconPayload& prev, const BeaconPayload& cur,
                            double eps_loc);

// Rolling per-neighbor observation state.
struct NeighborObservation {
    struct EpochReading {
        std::uint64_t epoch = 0;
        double value = 0.0;
    };
    std::deque<EpochReading> readings;  // latest per epoch, bounded by window
    std::uint32_t tx_originated_this_epoch = 0;
    std::deque<std::uint32_t> tx_history;
    std::uint64_t forwarded = 0;
    std::uint64_t dropped = 0;
    bool reading_ok_this_epoch = false;
    bool reading_flagged_this_epoch = false;
    std::optional<BeaconPayload> last_beacon;
    std::optional<std::uint16_t> last_reading_seq;
};

}  // namespace wsn
