#include "wsn/channel.hpp"

#include <algorithm>

namespace wsn {

Channel::Channel(const Topology& topo, EventQueue& queue, StreamSet& streams,
                 ChannelModel model, DeliverFn deliver)
    : topo_(topo),
      queue_(queue),
      streams_(streams),
      model_(model),
      deliver_(std::move(deliver)),
      tx_queue_(topo.size()),
      tx_busy_(topo.size(), false),
      in_flight_(topo.size()) {
    if (model_.loss_prob < 0.0 || model_.loss_prob > 1.0)
        throw ConfigError("loss_prob must be in [0,1]");
}

void Channel::transmit(NodeId src, Frame frame, bool priority) {
    frame.transmitter = src;
    auto shared = std::make_shared<const Frame>(std::move(frame));
    auto& q = tx_queue_[src];
    if (priority) {
        // FIFO within the priority class, ahead of everything bulk.
        auto it = q.begin();
        while (it != q.end() && it->second) ++it;
        q.insert(it, {std::move(shared), true});
    } else {
        q.push_back({std::move(shared), false});
    }
    if (!tx_busy_[src]) start_next(src);
}

void Channel::start_next(NodeId src) {
    if (tx_queue_[src].empty()) {
        tx_busy_[src] = false;
        return;
    }
    tx_busy_[src] = true;
    auto frame = tx_queue_[src].front().first;
    tx_queue_[src].pop_front();
    queue_.schedule(queue_.now(), EventKind::TransmissionStart, src,
                    [this, src, frame] { begin_tx(src, frame); });
}

void Channel::begin_tx(NodeId src, const std::shared_ptr<const Frame>& frame) {
    const SimTime start = queue_.now();
    const SimTime end = start + kAirtimeTicks;
    for (NodeId r : topo_.neighbors(src)) {
        auto entry = std::make_shared<InFlight>();
        entry->frame = frame;
        entry->start = start;
        entry->end = end;
        if (model_.collision_window > 0) {
            // Overlapping frames at this receiver destroy each other; the
            // colliding senders are necessarily both neighbors of r, so the
            // damage stays local to r.
            for (auto& other : in_flight_[r]) {
                if (start < other->start + model_.collision_window &&
                    other->start < start + model_.collision_window) {
                    other->doomed = true;
                    entry->doomed = true;
                }
            }
        }
        in_flight_[r].push_back(entry);
        queue_.schedule(end, EventKind::Delivery, r,
                        [this, r, entry] { finish_rx(r, entry); });
    }
    queue_.schedule(end, EventKind::TransmissionStart, src, [this, src] { start_next(src); });
}

void Channel::finish_rx(NodeId receiver, const std::shared_ptr<InFlight>& entry) {
    auto& active = in_flight_[receiver];
    active.erase(std::remove(active.begin(), active.end(), entry), active.end());
    if (entry->doomed) return;
    if (entry->frame->noise) return;
    if (drop_filter_ && drop_filter_(receiver, *entry->frame)) return;
    if (model_.loss_prob > 0.0) {
        auto& stream = streams_.stream_for("loss/" + std::to_string(receiver));
        if (stream.chance(model_.loss_prob)) return;
    }
    deliver_(receiver, *entry->frame);
}

}  // namespace wsn
