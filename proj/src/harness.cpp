#include "wsn/harness.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include "wsn/world.hpp"

namespace wsn {

std::uint64_t replica_seed(std::uint64_t master, std::size_t replica) {
    std::uint64_t state = master ^ (0x9E3779B97F4A7C15ULL * (replica + 1));
    return splitmix64(state);
}

RunOutput run_scenario(const Scenario& sc, unsigned jobs) {
    sc.validate();
    RunOutput out;
    out.scenario = sc;
    const std::size_t n = sc.replicas;
    out.replica_reports.resize(n);
    out.trajectories.resize(n);
    out.rule_events.resize(n);
    out.traces.resize(n);

    auto run_one = [&](std::size_t k) {
        World world(sc, replica_seed(sc.seed, k));
        world.run();
        out.replica_reports[k] = world.report();
        out.trajectories[k] = world.trajectories();
        out.rule_events[k] = world.rule_events();
        out.traces[k] = world.trace_text();
    };

    if (jobs <= 1 || n == 1) {
        for (std::size_t k = 0; k < n; ++k) run_one(k);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= n) return;
                run_one(k);
            }
        };
        std::vector<std::thread> pool;
        const unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(n));
        pool.reserve(count);
        for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    out.aggregate = aggregate_mean(out.replica_reports);
    out.aggregate_stddev = aggregate_std(out.replica_reports);
    return out;
}

Scenario apply_param(const Scenario& sc, const std::string& path, double value) {
    Scenario s = sc;
    if (path == "loss_prob") s.loss_prob = value;
    else if (path == "sense_sigma") s.sense_sigma = value;
    else if (path == "field_value") s.field_value = value;
    else if (path == "theta_trust") s.trust.theta_trust = value;
    else if (path == "lambda") s.trust.lambda = value;
    else if (path == "theta_route") s.theta_route = value;
    else if (path == "p_watch") s.watchdog.p_watch = value;
    else if (path == "k_sigma") s.watchdog.k_sigma = value;
    else if (path == "delta_traffic") s.watchdog.delta_traffic = value;
    else if (path == "theta_pdr") s.watchdog.theta_pdr = value;
    else if (path == "expected_tx_per_epoch") s.watchdog.expected_tx_per_epoch = value;
    else if (path == "w_neg_ack") s.watchdog.w_neg_ack = value;
    else if (path == "w_neg_auth") s.watchdog.w_neg_auth = value;
    else if (path == "w_neg_data") s.watchdog.w_neg_data = value;
    else if (path == "w_neg_traffic") s.watchdog.w_neg_traffic = value;
    else if (path.rfind("attack.", 0) == 0) {
        const std::string field = path.substr(7);
        bool touched = false;
        for (auto& e : s.schedule.entries) {
            if (!e.attack) continue;
            touched = true;
            if (field == "drop_rate") e.attack->drop_rate = value;
            else if (field == "alter_rate") e.attack->alter_rate = value;
            else if (field == "replay_rate") e.attack->replay_rate = value;
            else if (field == "delay_ticks") e.attack->delay_ticks = static_cast<SimTime>(value);
            else if (field == "jam_rate") e.attack->jam_rate = value;
            else if (field == "bias_offset") e.attack->data_bias.offset = value;
            else if (field == "bias_sigma") e.attack->data_bias.sigma = value;
            else if (field == "bogus_query_rate") e.attack->bogus_query_rate = value;
            else if (field == "byzantine_duty") e.attack->byzantine_duty = value;
            else throw ConfigError("unknown sweep path '" + path + "'");
        }
        if (!touched)
            throw ConfigError("sweep path '" + path + "' matches no compromise entry");
    } else if (path.rfind("fault.", 0) == 0) {
        const std::string field = path.substr(6);
        bool touched = false;
        for (auto& e : s.schedule.entries) {
            if (!e.fault) continue;
            touched = true;
            if (field == "drop_rate") e.fault->drop_rate = value;
            else if (field == "alter_rate") e.fault->alter_rate = value;
            else if (field == "broadcast_rate") e.fault->broadcast_rate = value;
            else if (field == "sense_error_sigma") e.fault->sense_error_sigma = value;
            else throw ConfigError("unknown sweep path '" + path + "'");
        }
        if (!touched) throw ConfigError("sweep path '" + path + "' matches no fault entry");
    } else {
        throw ConfigError("unknown sweep path '" + path + "'");
    }
    s.validate();
    return s;
}

std::vector<SweepRow> run_sweep(const Scenario& sc, const std::string& path,
                                const std::vector<double>& values, std::size_t replicas,
                                unsigned jobs) {
    if (values.size() < 2) throw ConfigError("a sweep needs at least 2 values");
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double v : values) {
        Scenario s = apply_param(sc, path, v);
        s.replicas = replicas;
        RunOutput out = run_scenario(s, jobs);
        SweepRow row;
        row.value = v;
        row.aggregate = out.aggregate;
        row.stddev = out.aggregate_stddev;
        row.replicas = out.replica_reports;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

void append_metric_header(std::string& csv) {
    for (const auto& name : metric_names()) {
        csv += ',';
        csv += name;
    }
    csv += '\n';
}

void append_metric_row(std::string& csv, const std::vector<double>& values) {
    for (double v : values) {
        csv += ',';
        csv += format_metric(v);
    }
    csv += '\n';
}

}  // namespace

std::string summary_csv(const RunOutput& out) {
    std::string csv = "replica";
    append_metric_header(csv);
    for (std::size_t k = 0; k < out.replica_reports.size(); ++k) {
        csv += std::to_string(k);
        append_metric_row(csv, metric_values(out.replica_reports[k]));
    }
    csv += "mean";
    append_metric_row(csv, metric_values(out.aggregate));
    csv += "std";
    append_metric_row(csv, out.aggregate_stddev);
    return csv;
}

std::string trajectories_csv(const RunOutput& out) {
    std::string csv = "replica,epoch,observer,subject,p,n,trust,status\n";
    for (std::size_t k = 0; k < out.trajectories.size(); ++k) {
        for (const TrajectoryRow& r : out.trajectories[k]) {
            csv += std::to_string(k);
            csv += ',';
            csv += std::to_string(r.epoch);
            csv += ',';
            csv += std::to_string(r.observer);
            csv += ',';
            csv += std::to_string(r.subject);
            csv += ',';
            csv += format_metric(r.positive);
            csv += ',';
            csv += format_metric(r.negative);
            csv += ',';
            csv += format_metric(r.trust);
            csv += ',';
            csv += to_string(r.status);
            csv += '\n';
        }
    }
    return csv;
}

std::string rule_events_csv(const RunOutput& out) {
    std::string csv = "replica,tick,observer,subject,rule,polarity,weight\n";
    for (std::size_t k = 0; k < out.rule_events.size(); ++k) {
        for (const RuleEventRow& r : out.rule_events[k]) {
            csv += std::to_string(k);
            csv += ',';
            csv += std::to_string(r.tick);
            csv += ',';
            csv += std::to_string(r.observer);
            csv += ',';
            csv += std::to_string(r.subject);
            csv += ',';
            csv += to_string(r.rule);
            csv += ',';
            csv += to_string(r.polarity);
            csv += ',';
            csv += format_metric(r.weight);
            csv += '\n';
        }
    }
    return csv;
}

std::string probes_csv(const RunOutput& out) {
    std::string csv = "replica,querier,remote,issued_at,resolved_at,hop_estimate,result\n";
    for (std::size_t k = 0; k < out.replica_reports.size(); ++k) {
        for (const ProbeOutcome& p : out.replica_reports[k].probes) {
            csv += std::to_string(k);
            csv += ',';
            csv += std::to_string(p.querier);
            csv += ',';
            csv += std::to_string(p.remote);
            csv += ',';
            csv += std::to_string(p.issued_at);
            csv += ',';
            csv += std::to_string(p.resolved_at);
            csv += ',';
            csv += std::to_string(p.hop_estimate);
            csv += ',';
            csv += to_string(p.result);
            csv += '\n';
        }
    }
    return csv;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& param) {
    std::string csv = param;
    append_metric_header(csv);
    for (const SweepRow& row : rows) {
        csv += format_metric(row.value);
        append_metric_row(csv, metric_values(row.aggregate));
    }
    return csv;
}

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& body) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot write " + tmp.string());
        f << body;
        if (!f.good()) throw ConfigError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void export_run(const RunOutput& out, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    write_atomic(base / "summary.csv", summary_csv(out));
    write_atomic(base / "trust_trajectories.csv", trajectories_csv(out));
    write_atomic(base / "rule_events.csv", rule_events_csv(out));
    bool any_probes = false;
    for (const auto& r : out.replica_reports) any_probes |= !r.probes.empty();
    if (any_probes) write_atomic(base / "probes.csv", probes_csv(out));
    bool any_trace = false;
    for (const auto& t : out.traces) any_trace |= !t.empty();
    if (any_trace) {
        std::string trace;
        for (std::size_t k = 0; k < out.traces.size(); ++k) {
            trace += "# replica ";
            trace += std::to_string(k);
            trace += '\n';
            trace += out.traces[k];
        }
        write_atomic(base / "event_trace.txt", trace);
    }
}

void export_sweep(const std::vector<SweepRow>& rows, const std::string& param,
                  const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_atomic(std::filesystem::path(dir) / "sweep.csv", sweep_csv(rows, param));
}

BenchResult bench_crypto(std::size_t packets) {
    RandomStream rng(0xBE9CCull, "bench");
    SecretKey key;
    for (auto& b : key) b = static_cast<std::uint8_t>(rng.next_u64());
    const ExpandedKey ek = expand_key(key, kDefaultRounds);

    std::vector<std::uint8_t> payload(kMaxPayload);
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng.next_u64());

    const auto start = std::chrono::steady_clock::now();
    std::uint64_t guard = 0;
    for (std::size_t i = 0; i < packets; ++i) {
        const std::uint16_t seq = static_cast<std::uint16_t>(i);
        Sealed s = seal(ek, 7, seq, static_cast<std::uint8_t>(HandlerId::Data), payload);
        auto opened = open(ek, 7, seq, static_cast<std::uint8_t>(HandlerId::Data), s.payload,
                           s.mac);
        if (!opened) throw std::logic_error("bench: authentication failed");
        guard += (*opened)[0];
    }
    const auto stop = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(stop - start).count();
    (void)guard;
    BenchResult r;
    r.packets = packets;
    r.seal_open_per_sec = secs > 0.0 ? packets / secs : 0.0;
    return r;
}

}  // namespace wsn
