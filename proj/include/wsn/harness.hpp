#pragma once

#include <string>
#include <vector>

#include "wsn/metrics.hpp"
#include "wsn/scenario.hpp"
#include "wsn/types.hpp"

namespace wsn {

struct RunOutput {
    Scenario scenario;
    std::vector<MetricsReport> replica_reports;
    MetricsReport aggregate;
    std::vector<double> aggregate_stddev;
    std::vector<std::vector<TrajectoryRow>> trajectories;  // per replica
    std::vector<std::vector<RuleEventRow>> rule_events;    // per replica
    std::vector<std::string> traces;                       // per replica, may be empty
};

// Sub-seed for replica k: replicas differ only by derived seeds.
std::uint64_t replica_seed(std::uint64_t master, std::size_t replica);

// Runs every replica (in parallel when jobs > 1; each world is independent)
// and aggregates. Output is identical for any jobs value.
RunOutput run_scenario(const Scenario& sc, unsigned jobs = 1);

struct SweepRow {
    double value = 0.0;
    MetricsReport aggregate;
    std::vector<double> stddev;
    std::vector<MetricsReport> replicas;
};

// Rewrites one numeric parameter. Paths are scenario keys ("loss_prob",
// "theta_trust", ...) or attack./fault. fields applied to every schedule
// entry ("attack.drop_rate").
Scenario apply_param(const Scenario& sc, const std::string& path, double value);

std::vector<SweepRow> run_sweep(const Scenario& sc, const std::string& path,
                                const std::vector<double>& values, std::size_t replicas,
                                unsigned jobs = 1);

// CSV bodies (deterministic byte-for-byte for a given run).
std::string summary_csv(const RunOutput& out);
std::string trajectories_csv(const RunOutput& out);
std::string rule_events_csv(const RunOutput& out);
std::string probes_csv(const RunOutput& out);
std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& param);

// Writes summary.csv, trust_trajectories.csv, rule_events.csv, probes.csv
// (when probes ran) and event_trace.txt (when tracing). Files are written to
// temp names and renamed, so partial exports never masquerade as complete.
void export_run(const RunOutput& out, const std::string& dir);
void export_sweep(const std::vector<SweepRow>& rows, const std::string& param,
                  const std::string& dir);

struct BenchResult {
    double seal_open_per_sec = 0.0;
    std::size_t packets = 0;
};

// seal+open throughput of full 30-byte packets on this machine.
BenchResult bench_crypto(std::size_t packets);

}  // namespace wsn
