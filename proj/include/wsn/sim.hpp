#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "wsn/types.hpp"

namespace wsn {

enum class EventKind : std::uint8_t {
    TransmissionStart,
    Delivery,
    AckTimeout,
    WatchTimeout,
    BeaconTick,
    SensingTick,
    EpochTick,
    VoteDeadline,
    Activation,
    ProbeTimeout,
    JamTick,
};

const char* to_string(EventKind k);

using EventHandle = std::uint64_t;

struct SimEvent {
    SimTime fire_at = 0;
    std::uint64_t seq = 0;  // global insertion counter; tie-break at equal fire_at
    EventKind kind = EventKind::Delivery;
    std::uint32_t subject = 0;
    std::function<void()> action;
};

// Dispatches events in strict (fire_at, seq) order. Single-threaded by
// design; one queue drives one simulation world.
class EventQueue {
public:
    using TraceFn = std::function<void(SimTime, std::uint64_t, EventKind, std::uint32_t)>;

    SimTime now() const { return clock_; }

    EventHandle schedule(SimTime at, EventKind kind, std::uint32_t subject,
                         std::function<void()> action);
    // True if the event existed and had not fired; it will never dispatch.
    bool cancel(EventHandle handle);

    // Dispatches every event with fire_at <= t, advances the clock to t, and
    // returns the number of events dispatched (cancelled ones excluded).
    std::size_t run_until(SimTime t);

    bool empty() const { return live_count_ == 0; }

    void set_trace(TraceFn fn) { trace_ = std::move(fn); }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };

    SimTime clock_ = 0;
    std::uint64_t next_seq_ = 0;
    std::size_t live_count_ = 0;
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
    std::unordered_set<EventHandle> cancelled_;
    TraceFn trace_;
};

}  // namespace wsn
