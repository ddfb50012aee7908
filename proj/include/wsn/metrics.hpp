#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsn/trust.hpp"
#include "wsn/types.hpp"

namespace wsn {

enum class ProbeResult : std::uint8_t { Trusted, Untrusted, Undecided };

const char* to_string(ProbeResult r);

struct ProbeOutcome {
    NodeId querier = 0;
    NodeId remote = 0;
    SimTime issued_at = 0;
    SimTime resolved_at = 0;
    unsigned hop_estimate = 0;
    ProbeResult result = ProbeResult::Undecided;
};

struct MetricsReport {
    // Headline rates; NaN where undefined (e.g. detection rate with no bad nodes).
    double detection_rate = 0.0;
    double false_positive_rate = 0.0;
    double mean_time_to_isolation = 0.0;  // ticks, activation -> first honest isolation
    double delivery_ratio = 0.0;
    double control_overhead = 0.0;  // (ALERT+VOTE+BEACON+PROBE bytes) / total bytes
    double disagreement = 0.0;      // conflicting verdicts over observer pairs

    std::uint64_t packets_originated = 0;
    std::uint64_t packets_delivered = 0;
    std::uint64_t bytes_total = 0;
    std::uint64_t bytes_control = 0;
    std::uint64_t alerts = 0;
    std::uint64_t jam_alarms = 0;
    std::uint64_t isolation_events = 0;
    std::uint64_t replays_detected = 0;
    std::uint64_t auth_failures_hopwise = 0;
    std::uint64_t auth_failures_e2e = 0;
    std::uint64_t codec_errors = 0;
    std::uint64_t routing_failures = 0;
    std::uint64_t truly_bad_nodes = 0;
    std::uint64_t detected_bad_nodes = 0;

    std::vector<ProbeOutcome> probes;
};

struct TrajectoryRow {
    std::uint64_t epoch = 0;
    NodeId observer = 0;
    NodeId subject = 0;
    double positive = 0.0;
    double negative = 0.0;
    double trust = 1.0;
    TrustStatus status = TrustStatus::Active;
};

struct RuleEventRow {
    SimTime tick = 0;
    NodeId observer = 0;
    NodeId subject = 0;
    Rule rule = Rule::Ack;
    Polarity polarity = Polarity::Positive;
    double weight = 0.0;
};

// Deterministic float formatting shared by all CSV writers.
std::string format_metric(double v);

std::vector<std::string> metric_names();
std::vector<double> metric_values(const MetricsReport& r);

// Arithmetic mean / sample std over replicas, ignoring NaN entries per metric.
MetricsReport aggregate_mean(const std::vector<MetricsReport>& reps);
std::vector<double> aggregate_std(const std::vector<MetricsReport>& reps);

}  // namespace wsn
