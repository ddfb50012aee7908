#include "wsn/metrics.hpp"

#include <cmath>
#include <cstdio>

namespace wsn {

const char* to_string(ProbeResult r) {
    switch (r) {
        case ProbeResult::Trusted: return "trusted";
        case ProbeResult::Untrusted: return "untrusted";
        case ProbeResult::Undecided: return "undecided";
    }
    return "?";
}

std::string format_metric(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::vector<std::string> metric_names() {
    return {"detection_rate",
            "false_positive_rate",
            "mean_time_to_isolation",
            "delivery_ratio",
            "control_overhead",
            "disagreement",
            "packets_originated",
            "packets_delivered",
            "bytes_total",
            "bytes_control",
            "alerts",
            "jam_alarms",
            "isolation_events",
            "replays_detected",
            "auth_failures_hopwise",
            "auth_failures_e2e",
            "codec_errors",
            "routing_failures",
            "truly_bad_nodes",
            "detected_bad_nodes"};
}

std::vector<double> metric_values(const MetricsReport& r) {
    return {r.detection_rate,
            r.false_positive_rate,
            r.mean_time_to_isolation,
            r.delivery_ratio,
            r.control_overhead,
            r.disagreement,
            static_cast<double>(r.packets_originated),
            static_cast<double>(r.packets_delivered),
            static_cast<double>(r.bytes_total),
            static_cast<double>(r.bytes_control),
            static_cast<double>(r.alerts),
            static_cast<double>(r.jam_alarms),
            static_cast<double>(r.isolation_events),
            static_cast<double>(r.replays_detected),
            static_cast<double>(r.auth_failures_hopwise),
            static_cast<double>(r.auth_failures_e2e),
            static_cast<double>(r.codec_errors),
            static_cast<double>(r.routing_failures),
            static_cast<double>(r.truly_bad_nodes),
            static_cast<double>(r.detected_bad_nodes)};
}

namespace {

// Column-wise mean/std over replicas; NaN cells are skipped so undefined
// metrics do not poison the aggregate.
void column_stats(const std::vector<std::vector<double>>& rows, std::size_t col,
                  double& mean, double& stddev) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : rows) {
        if (std::isfinite(row[col])) {
            sum += row[col];
            ++count;
        }
    }
    if (count == 0) {
        mean = std::nan("");
        stddev = std::nan("");
        return;
    }
    mean = sum / count;
    if (count < 2) {
        stddev = 0.0;
        return;
    }
    double ss = 0.0;
    for (const auto& row : rows)
        if (std::isfinite(row[col])) ss += (row[col] - mean) * (row[col] - mean);
    stddev = std::sqrt(ss / (count - 1));
}

}  // namespace

MetricsReport aggregate_mean(const std::vector<MetricsReport>& reps) {
    std::vector<std::vector<double>> rows;
    rows.reserve(reps.size());
    for (const auto& r : reps) rows.push_back(metric_values(r));

    std::vector<double> means(metric_names().size());
    for (std::size_t c = 0; c < means.size(); ++c) {
        double sd;
        column_stats(rows, c, means[c], sd);
    }
    MetricsReport agg;
    agg.detection_rate = means[0];
    agg.false_positive_rate = means[1];
    agg.mean_time_to_isolation = means[2];
    agg.delivery_ratio = means[3];
    agg.control_overhead = means[4];
    agg.disagreement = means[5];
    agg.packets_originated = static_cast<std::uint64_t>(means[6]);
    agg.packets_delivered = static_cast<std::uint64_t>(means[7]);
    agg.bytes_total = static_cast<std::uint64_t>(means[8]);
    agg.bytes_control = static_cast<std::uint64_t>(means[9]);
    agg.alerts = static_cast<std::uint64_t>(means[10]);
    agg.jam_alarms = static_cast<std::uint64_t>(means[11]);
    agg.isolation_events = static_cast<std::uint64_t>(means[12]);
    agg.replays_detected = static_cast<std::uint64_t>(means[13]);
    agg.auth_failures_hopwise = static_cast<std::uint64_t>(means[14]);
    agg.auth_failures_e2e = static_cast<std::uint64_t>(means[15]);
    agg.codec_errors = static_cast<std::uint64_t>(means[16]);
    agg.routing_failures = static_cast<std::uint64_t>(means[17]);
    agg.truly_bad_nodes = static_cast<std::uint64_t>(means[18]);
    agg.detected_bad_nodes = static_cast<std::uint64_t>(means[19]);
    return agg;
}

std::vector<double> aggregate_std(const std::vector<MetricsReport>& reps) {
    std::vector<std::vector<double>> rows;
    rows.reserve(reps.size());
    for (const auto& r : reps) rows.push_back(metric_values(r));
    std::vector<double> out(metric_names().size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        double mean;
        column_stats(rows, c, mean, out[c]);
    }
    return out;
}

}  // namespace wsn
