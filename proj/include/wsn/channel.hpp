#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <vector>

#include "wsn/rng.hpp"
#include "wsn/sim.hpp"
#include "wsn/topology.hpp"
#include "wsn/types.hpp"

namespace wsn {

// 30 bytes at the 10 Kbps radio: 24 ms on air.
inline constexpr SimTime kAirtimeTicks = 24;

struct ChannelModel {
    double loss_prob = 0.0;       // per frame per receiver
    SimTime collision_window = 0; // 0 = ideal collision-avoidance MAC, no overlap loss
};

struct Frame {
    NodeId transmitter = 0;
    bool noise = false;  // jamming energy: occupies air, carries no packet
    std::vector<std::uint8_t> bytes;
};

// Broadcast medium: every neighbor of a transmitter independently receives a
// copy (promiscuous overhearing), subject to loss and, when enabled, to
// destructive collisions local to each receiver. Transmissions of one node
// are serialized on its own radio.
class Channel {
public:
    using DeliverFn = std::function<void(NodeId receiver, const Frame& frame)>;
    // Test hook: return true to drop this (receiver, frame) delivery.
    using DropFilter = std::function<bool(NodeId receiver, const Frame& frame)>;

    Channel(const Topology& topo, EventQueue& queue, StreamSet& streams,
            ChannelModel model, DeliverFn deliver);

    // Queues the frame on the sender's radio. Priority frames (hop-wise
    // acknowledgments, which real MACs send with turnaround priority) jump
    // ahead of anything not yet on the air.
    void transmit(NodeId src, Frame frame, bool priority = false);

    void set_drop_filter(DropFilter f) { drop_filter_ = std::move(f); }

    const ChannelModel& model() const { return model_; }

private:
    struct InFlight {
        std::shared_ptr<const Frame> frame;
        SimTime start = 0;
        SimTime end = 0;
        bool doomed = false;
    };

    void start_next(NodeId src);
    void begin_tx(NodeId src, const std::shared_ptr<const Frame>& frame);
    void finish_rx(NodeId receiver, const std::shared_ptr<InFlight>& entry);

    const Topology& topo_;
    EventQueue& queue_;
    StreamSet& streams_;
    ChannelModel model_;
    DeliverFn deliver_;
    DropFilter drop_filter_;
    std::vector<std::deque<std::pair<std::shared_ptr<const Frame>, bool>>> tx_queue_;
    std::vector<bool> tx_busy_;
    std::vector<std::vector<std::shared_ptr<InFlight>>> in_flight_;  // per receiver
};

}  // namespace wsn
