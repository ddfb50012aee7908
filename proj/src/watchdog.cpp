#include "wsn/watchdog.hpp"

#include <algorithm>
#include <cmath>

namespace wsn {

void WatchdogConfig::validate() const {
    if (p_watch < 0.0 || p_watch > 1.0) throw ConfigError("p_watch must be in [0,1]");
    if (watch_capacity == 0) throw ConfigError("watch_capacity must be positive");
    if (t_ack == 0) throw ConfigError("t_ack must be positive");
    if (k_sigma <= 0.0) throw ConfigError("k_sigma must be positive");
    if (m_min_samples < 2) throw ConfigError("m_min_samples must be >= 2");
    if (window_epochs == 0) throw ConfigError("window_epochs must be positive");
    if (delta_traffic < 0.0) throw ConfigError("delta_traffic must be non-negative");
    if (theta_pdr < 0.0 || theta_pdr > 1.0) throw ConfigError("theta_pdr must be in [0,1]");
    if (eps_loc <= 0.0) throw ConfigError("eps_loc must be positive");
}

void WatchBuffer::add(WatchEntry entry) {
    if (entries_.size() >= capacity_) entries_.pop_front();
    entries_.push_back(entry);
}

WatchEntry* WatchBuffer::match(NodeId origin, std::uint16_t seq, NodeId forwarder) {
    for (auto& e : entries_)
        if (e.origin == origin && e.seq == seq && e.forwarder == forwarder) return &e;
    return nullptr;
}

void WatchBuffer::drop(NodeId origin, std::uint16_t seq, NodeId forwarder) {
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [&](const WatchEntry& e) {
                                      return e.origin == origin && e.seq == seq &&
                                             e.forwarder == forwarder;
                                  }),
                   entries_.end());
}

AckOutcome resolve_ack_case(bool ack_received, bool forward_seen) {
    if (ack_received) return AckOutcome::Positive;
    if (forward_seen) return AckOutcome::NoJudgment;
    return AckOutcome::Negative;
}

std::optional<bool> judge_reading(double value, const std::vector<double>& others,
                                  std::size_t m_min, double k_sigma, double sigma_min) {
    if (others.size() < m_min) return std::nullopt;
    double mean = 0.0;
    for (double v : others) mean += v;
    mean /= static_cast<double>(others.size());
    double var = 0.0;
    for (double v : others) var += (v - mean) * (v - mean);
    var /= static_cast<double>(others.size() - 1);
    const double sigma = std::max(std::sqrt(var), sigma_min);
    return std::fabs(value - mean) <= k_sigma * sigma;
}

bool traffic_within_band(double observed, double expected, double delta) {
    return observed <= expected * (1.0 + delta);
}

BeaconJudgment check_beacon(const BeaconPayload& prev, const BeaconPayload& cur,
                            double eps_loc) {
    if (cur.code_digest != prev.code_digest) return BeaconJudgment::MemoryViolation;
    const double dx = from_dm(cur.x_dm) - from_dm(prev.x_dm);
    const double dy = from_dm(cur.y_dm) - from_dm(prev.y_dm);
    if (std::hypot(dx, dy) > eps_loc) return BeaconJudgment::LocationViolation;
    return BeaconJudgment::Consistent;
}

}  // namespace wsn
