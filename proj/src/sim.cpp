#include "wsn/sim.hpp"

namespace wsn {

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::TransmissionStart: return "transmission-start";
        case EventKind::Delivery: return "delivery";
        case EventKind::AckTimeout: return "ack-timeout";
        case EventKind::WatchTimeout: return "watch-timeout";
        case EventKind::BeaconTick: return "beacon-tick";
        case EventKind::SensingTick: return "sensing-tick";
        case EventKind::EpochTick: return "epoch-tick";
        case EventKind::VoteDeadline: return "vote-deadline";
        case EventKind::Activation: return "activation";
        case EventKind::ProbeTimeout: return "probe-timeout";
        case EventKind::JamTick: return "jam-tick";
    }
    return "?";
}

EventHandle EventQueue::schedule(SimTime at, EventKind kind, std::uint32_t subject,
                                 std::function<void()> action) {
    if (at < clock_)
        throw ClockViolation("schedule at tick " + std::to_string(at) +
                             " before clock " + std::to_string(clock_));
    SimEvent ev;
    ev.fire_at = at;
    ev.seq = next_seq_++;
    ev.kind = kind;
    ev.subject = subject;
    ev.action = std::move(action);
    const EventHandle handle = ev.seq;
    queue_.push(std::move(ev));
    ++live_count_;
    return handle;
}

bool EventQueue::cancel(EventHandle handle) {
    if (handle >= next_seq_) return false;
    if (cancelled_.count(handle)) return false;
    cancelled_.insert(handle);
    if (live_count_ > 0) --live_count_;
    return true;
}

std::size_t EventQueue::run_until(SimTime t) {
    if (t < clock_)
        throw ClockViolation("run_until past tick " + std::to_string(t));
    std::size_t dispatched = 0;
    while (!queue_.empty() && queue_.top().fire_at <= t) {
        SimEvent ev = queue_.top();
        queue_.pop();
        if (cancelled_.count(ev.seq)) {
            cancelled_.erase(ev.seq);
            continue;
        }
        --live_count_;
        clock_ = ev.fire_at;
        if (trace_) trace_(ev.fire_at, ev.seq, ev.kind, ev.subject);
        if (ev.action) ev.action();
        ++dispatched;
    }
    clock_ = t;
    return dispatched;
}

}  // namespace wsn
