// wsnsim: scenario-driven simulator for the trust-managed sensor network.
//
//   wsnsim run <scenario-file> [--seed N] [--out DIR] [--jobs K]
//   wsnsim sweep <scenario-file> --param PATH --values V1,V2,... [--replicas R]
//   wsnsim bench-crypto [--packets N]
//   wsnsim preset <name>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wsn/harness.hpp"
#include "wsn/scenario.hpp"

namespace {

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

void print_summary(const wsn::RunOutput& out) {
    const auto names = wsn::metric_names();
    const auto mean = wsn::metric_values(out.aggregate);
    std::printf("scenario %s: %zu replica(s)\n", out.scenario.name.c_str(),
                out.replica_reports.size());
    for (std::size_t i = 0; i < names.size(); ++i)
        std::printf("  %-24s %s\n", names[i].c_str(), wsn::format_metric(mean[i]).c_str());
    for (const auto& rep : out.replica_reports) {
        for (const auto& p : rep.probes)
            std::printf("  probe %u->%u: %s (h=%u)\n", p.querier, p.remote,
                        wsn::to_string(p.result), p.hop_estimate);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wireless sensor network trust simulator"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out", param, values_csv, preset_name;
    std::uint64_t seed_override = 0;
    bool seed_set = false;
    unsigned jobs = 1;
    std::size_t replicas_override = 0;
    std::size_t bench_packets = 200000;

    auto* run_cmd = app.add_subcommand("run", "run one scenario file");
    run_cmd->add_option("scenario", scenario_path, "scenario file")->required();
    run_cmd->add_option("--seed", seed_override, "override the scenario seed")
        ->each([&](const std::string&) { seed_set = true; });
    run_cmd->add_option("--out", out_dir, "output directory (default: out)");
    run_cmd->add_option("--jobs", jobs, "parallel replica workers");

    auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter");
    sweep_cmd->add_option("scenario", scenario_path, "scenario file")->required();
    sweep_cmd->add_option("--param", param, "parameter path, e.g. attack.drop_rate")
        ->required();
    sweep_cmd->add_option("--values", values_csv, "comma-separated values")->required();
    sweep_cmd->add_option("--replicas", replicas_override, "replicas per value");
    sweep_cmd->add_option("--out", out_dir, "output directory (default: out)");
    sweep_cmd->add_option("--jobs", jobs, "parallel replica workers");

    auto* bench_cmd = app.add_subcommand("bench-crypto", "seal/open throughput");
    bench_cmd->add_option("--packets", bench_packets, "packets to process");

    auto* preset_cmd = app.add_subcommand("preset", "print a built-in scenario");
    preset_cmd->add_option("name", preset_name, "preset name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            wsn::Scenario sc = wsn::load_scenario(scenario_path);
            if (seed_set) sc.seed = seed_override;
            wsn::RunOutput out = wsn::run_scenario(sc, jobs);
            wsn::export_run(out, out_dir);
            print_summary(out);
            std::printf("wrote %s/summary.csv\n", out_dir.c_str());
            return 0;
        }
        if (sweep_cmd->parsed()) {
            wsn::Scenario sc = wsn::load_scenario(scenario_path);
            const auto values = parse_values(values_csv);
            const std::size_t reps = replicas_override ? replicas_override : sc.replicas;
            const auto rows = wsn::run_sweep(sc, param, values, reps, jobs);
            wsn::export_sweep(rows, param, out_dir);
            std::printf("%s", wsn::sweep_csv(rows, param).c_str());
            std::printf("wrote %s/sweep.csv\n", out_dir.c_str());
            return 0;
        }
        if (bench_cmd->parsed()) {
            const auto r = wsn::bench_crypto(bench_packets);
            std::printf("seal+open: %zu packets, %.0f packets/second\n", r.packets,
                        r.seal_open_per_sec);
            return 0;
        }
        if (preset_cmd->parsed()) {
            if (preset_name == "list") {
                for (const auto& n : wsn::preset_names()) std::printf("%s\n", n.c_str());
                return 0;
            }
            std::printf("%s", wsn::preset_text(preset_name).c_str());
            return 0;
        }
    } catch (const wsn::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
