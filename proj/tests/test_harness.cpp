#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "wsn/harness.hpp"

using namespace wsn;

namespace {

Scenario tiny() {
    Scenario sc;
    sc.nodes = 4;
    sc.explicit_positions = {{0, 0}, {50, 0}, {100, 0}, {95, 30}};
    sc.field_w = 200;
    sc.field_h = 100;
    sc.radio_range = 60;
    sc.run_ticks = 60000;
    sc.trace = true;
    return sc;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("replica sub-seeds are derived and distinct") {
    CHECK(replica_seed(1, 0) != replica_seed(1, 1));
    CHECK(replica_seed(1, 0) != 1);
    CHECK(replica_seed(1, 0) == replica_seed(1, 0));
}

TEST_CASE("two runs of the same scenario are byte-identical") {
    const Scenario sc = tiny();
    const RunOutput a = run_scenario(sc);
    const RunOutput b = run_scenario(sc);
    CHECK(summary_csv(a) == summary_csv(b));
    CHECK(trajectories_csv(a) == trajectories_csv(b));
    CHECK(rule_events_csv(a) == rule_events_csv(b));
    CHECK(a.traces == b.traces);
}

TEST_CASE("parallel jobs do not change the output bytes") {
    Scenario sc = tiny();
    sc.replicas = 4;
    const RunOutput serial = run_scenario(sc, 1);
    const RunOutput parallel = run_scenario(sc, 4);
    CHECK(summary_csv(serial) == summary_csv(parallel));
    CHECK(trajectories_csv(serial) == trajectories_csv(parallel));
}

TEST_CASE("aggregate rows equal the recomputed mean and std of the replicas") {
    Scenario sc = tiny();
    sc.replicas = 3;
    const RunOutput out = run_scenario(sc);
    const auto values0 = metric_values(out.replica_reports[0]);
    const auto values1 = metric_values(out.replica_reports[1]);
    const auto values2 = metric_values(out.replica_reports[2]);
    const auto agg = metric_values(out.aggregate);
    // delivery_ratio column (index 3): recompute by hand.
    const double mean = (values0[3] + values1[3] + values2[3]) / 3.0;
    CHECK(agg[3] == doctest::Approx(mean).epsilon(1e-9));
    double ss = 0;
    for (double v : {values0[3], values1[3], values2[3]}) ss += (v - mean) * (v - mean);
    CHECK(out.aggregate_stddev[3] == doctest::Approx(std::sqrt(ss / 2)).epsilon(1e-9));
}

TEST_CASE("export writes the documented files; reruns are byte-identical") {
    const Scenario sc = tiny();
    const RunOutput out = run_scenario(sc);
    const std::string dir = "harness_export_test";
    export_run(out, dir);
    const std::string first = slurp(std::filesystem::path(dir) / "summary.csv");
    CHECK(std::filesystem::exists(std::filesystem::path(dir) / "trust_trajectories.csv"));
    CHECK(std::filesystem::exists(std::filesystem::path(dir) / "rule_events.csv"));
    CHECK(std::filesystem::exists(std::filesystem::path(dir) / "event_trace.txt"));
    CHECK(first.rfind("replica,", 0) == 0);  // header row names the fields

    const RunOutput again = run_scenario(sc);
    export_run(again, dir);
    CHECK(slurp(std::filesystem::path(dir) / "summary.csv") == first);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep: needs two values, emits rows in value order") {
    Scenario sc = tiny();
    CompromiseEntry e;
    e.node = 1;
    e.at = 20000;
    AttackProfile a;
    a.drop_rate = 0.5;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    CHECK_THROWS_AS(run_sweep(sc, "attack.drop_rate", {1.0}, 1), ConfigError);

    const auto rows = run_sweep(sc, "attack.drop_rate", {1.0, 0.5, 0.0}, 2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].value == 1.0);
    CHECK(rows[1].value == 0.5);
    CHECK(rows[2].value == 0.0);
    CHECK(rows[0].replicas.size() == 2);
    // Nothing to detect at drop 0: the zero profile leaves no bad nodes, so
    // the rate is undefined and the row prints nan.
    CHECK_FALSE(rows[2].aggregate.detection_rate > 0.0);
    CHECK(rows[2].aggregate.false_positive_rate == doctest::Approx(0.0));
}

TEST_CASE("unresolvable sweep paths are config errors") {
    const Scenario sc = tiny();
    CHECK_THROWS_AS(apply_param(sc, "no_such_knob", 1.0), ConfigError);
    CHECK_THROWS_AS(apply_param(sc, "attack.drop_rate", 1.0), ConfigError);  // no entry
}

TEST_CASE("crypto bench runs and reports a positive rate") {
    const auto r = bench_crypto(2000);
    CHECK(r.packets == 2000);
    CHECK(r.seal_open_per_sec > 0.0);
}
