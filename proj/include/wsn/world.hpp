#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wsn/adversary.hpp"
#include "wsn/channel.hpp"
#include "wsn/crypto.hpp"
#include "wsn/metrics.hpp"
#include "wsn/packet.hpp"
#include "wsn/routing.hpp"
#include "wsn/scenario.hpp"
#include "wsn/sim.hpp"
#include "wsn/topology.hpp"
#include "wsn/trust.hpp"
#include "wsn/watchdog.hpp"

namespace wsn {

struct PendingAck {
    NodeId hop = 0;
    EventHandle timeout = 0;
};

struct VoteRound {
    NodeId suspect = 0;
    SimTime deadline = 0;
    std::vector<Vote> votes;
};

struct PendingProbe {
    NodeId remote = 0;
    unsigned hop_estimate = 0;
    unsigned retries_left = 0;
    EventHandle timeout = 0;
    SimTime issued_at = 0;
    Location remote_loc;
    unsigned budget = 0;
};

struct NodeState {
    NodeId id = 0;
    Location loc;  // true position, mirrors the topology
    SecretKey key{};
    ExpandedKey ek;
    std::uint32_t code_digest = 0;

    std::map<NodeId, ExpandedKey> neighbor_keys;  // bootstrap verification table
    std::map<NodeId, Location> known_loc;         // localization + beacons (reported)

    std::uint16_t next_seq = 0;
    std::deque<std::pair<NodeId, std::uint16_t>> seen_window;  // replay dedup
    std::map<std::pair<NodeId, std::uint16_t>, PendingAck> pending_acks;
    WatchBuffer watch{8};
    std::map<NodeId, NeighborObservation> obs;
    TrustStore trust;
    std::map<NodeId, VoteRound> rounds;
    std::map<NodeId, SimTime> last_alert;  // one alert per suspicion episode
    std::set<NodeId> notice_sent;          // one isolation notice per subject

    // adversary state
    std::optional<AttackProfile> attack;
    std::optional<FaultProfile> fault;
    std::optional<CollusionSpec> collusion;
    SimTime activation_at = 0;
    std::uint64_t fault_phase_epoch = ~0ULL;  // cache for probabilistic fault patterns
    bool fault_phase = false;

    // own-PDR bookkeeping (end-to-end ack mode)
    std::map<std::uint16_t, std::uint64_t> data_sent_epoch;  // seq -> epoch cohort
    std::map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> pdr_cohorts;
    double last_pdr = 1.0;

    std::map<std::pair<NodeId, std::uint16_t>, NodeId> probe_reverse;  // (querier,seq) -> prev
    std::map<std::uint16_t, PendingProbe> my_probes;                   // by probe seq
    std::deque<std::pair<NodeId, std::uint16_t>> watch_dedup;          // re-watch guard

    // Ground truth for metrics: carries a profile that actually deviates.
    bool is_bad() const {
        return (attack && !attack->is_zero()) || (fault && !fault->is_zero());
    }
};

// One simulation world: single-threaded, fully determined by (scenario, seed).
class World {
public:
    World(const Scenario& scenario, std::uint64_t seed);
    // Queued events capture `this`.
    World(const World&) = delete;
    World& operator=(const World&) = delete;

    void run();
    void run_until(SimTime t);

    MetricsReport report();

    const std::vector<TrajectoryRow>& trajectories() const { return trajectories_; }
    const std::vector<RuleEventRow>& rule_events() const { return rule_rows_; }
    const std::string& trace_text() const { return trace_; }

    const NodeState& node(NodeId id) const { return nodes_.at(id); }
    const Topology& topology() const { return *topo_; }
    Channel& channel() { return *channel_; }
    const Scenario& scenario() const { return sc_; }
    NodeId sink() const { return 0; }
    SimTime now() const { return queue_.now(); }
    std::uint64_t completed_epochs() const { return epoch_index_; }
    const std::vector<ProbeOutcome>& probe_outcomes() const { return probe_outcomes_; }

private:
    // bootstrap
    std::vector<Location> build_positions();
    void bootstrap_nodes();
    void schedule_node_timers();
    std::uint32_t honest_digest(NodeId id) const;

    // adversary
    bool attack_misbehaving(const NodeState& n) const;
    bool fault_active_now(NodeState& n);
    void activation(std::size_t entry_idx);
    void jam_tick(NodeId id);
    void colluder_epoch(NodeState& n);

    // transmit path
    void transmit(NodeState& n, Packet pkt, bool priority = false);
    Packet build_packet(NodeState& n, NodeId dst, HandlerId handler, std::uint16_t seq,
                        NodeId src, std::span<const std::uint8_t> plain);

    // timers and behaviors
    void sensing_tick(NodeId id, SimTime nominal);
    void beacon_tick(NodeId id);
    void epoch_tick();
    void send_report(NodeState& n, double value);
    void deliver_frame(NodeId receiver, const Frame& frame);
    void overhear_hooks(NodeState& n, const Packet& pkt, NodeId transmitter);
    void handle_data(NodeState& n, const Packet& pkt, NodeId transmitter);
    void relay_data(NodeState& n, Packet pkt, bool track);
    void handle_ack(NodeState& n, const Packet& pkt, NodeId transmitter);
    void relay_e2e_ack(NodeState& n, const AckPayload& ack);
    void handle_beacon(NodeState& n, const Packet& pkt, NodeId transmitter);
    void handle_alert(NodeState& n, const Packet& pkt, NodeId transmitter);
    void handle_vote(NodeState& n, const Packet& pkt, NodeId transmitter);
    void handle_probe(NodeState& n, const Packet& pkt, NodeId transmitter);
    void send_hop_ack(NodeState& n, NodeId to, NodeId orig_src, std::uint16_t orig_seq);
    void ack_timeout(NodeId id, NodeId origin, std::uint16_t seq);
    void watch_sweep(NodeId id);

    // trust flow
    void emit_rule_event(NodeId observer, RuleEvent ev);
    void broadcast_alert(NodeState& n, NodeId suspect, Rule rule);
    void open_round(NodeState& n, NodeId suspect);
    void cast_vote(NodeState& n, VoteRound& round);
    void vote_deadline(NodeId id, NodeId suspect);
    void apply_isolation(NodeState& n, NodeId suspect);

    // remote trust query
    void issue_probe(const ProbeRequestSpec& spec);
    void probe_timeout(NodeId querier, std::uint16_t probe_seq);
    void resolve_probe(NodeState& n, std::uint16_t probe_seq, ProbeResult result);
    void send_probe_packet(NodeState& n, NodeId to, const ProbePayload& payload);

    // helpers
    std::optional<NodeId> route_toward(const NodeState& n, const Location& dst,
                                       double min_trust) const;
    void snapshot_trajectories();
    void finalize_metrics();

    Scenario sc_;
    std::uint64_t seed_;
    StreamSet streams_;
    EventQueue queue_;
    std::unique_ptr<Topology> topo_;
    std::unique_ptr<Channel> channel_;
    std::vector<NodeState> nodes_;
    std::uint64_t epoch_index_ = 0;

    // logs
    std::vector<TrajectoryRow> trajectories_;
    std::vector<RuleEventRow> rule_rows_;
    std::string trace_;

    // metric counters
    std::uint64_t bytes_total_ = 0;
    std::uint64_t bytes_control_ = 0;
    std::uint64_t originated_ = 0;
    std::uint64_t delivered_ = 0;
    std::set<std::pair<NodeId, std::uint16_t>> settled_data_;
    std::uint64_t originated_settled_ = 0;
    std::uint64_t delivered_settled_ = 0;
    std::uint64_t alerts_ = 0;
    std::uint64_t jam_alarms_ = 0;
    std::uint64_t isolation_events_ = 0;
    std::uint64_t replays_ = 0;
    std::uint64_t auth_hop_ = 0;
    std::uint64_t auth_e2e_ = 0;
    std::uint64_t codec_errors_ = 0;
    std::uint64_t routing_failures_ = 0;
    std::map<NodeId, SimTime> first_isolation_;  // suspect -> first honest isolation tick
    std::vector<ProbeOutcome> probe_outcomes_;
    bool finalized_ = false;
    MetricsReport report_;
};

}  // namespace wsn
