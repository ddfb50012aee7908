#include "doctest.h"
#include "wsn/scenario.hpp"

using namespace wsn;

TEST_CASE("a minimal scenario loads with documented defaults") {
    const Scenario sc = parse_scenario("nodes = 5\nrun_ticks = 1000\n", "mini");
    CHECK(sc.nodes == 5);
    CHECK(sc.run_ticks == 1000);
    CHECK(sc.trust.theta_trust == doctest::Approx(0.25));
    CHECK(sc.trust.lambda == doctest::Approx(0.9));
    CHECK(sc.watchdog.p_watch == doctest::Approx(0.25));
    CHECK(sc.watchdog.t_ack == 80);
    CHECK(sc.epoch == 10000);
    CHECK_FALSE(sc.end_to_end_ack);
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        parse_scenario("nodes = 5\ndrop_rte = 0.5\n", "typo");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("drop_rte") != std::string::npos);
    }
}

TEST_CASE("compromise at time zero is rejected") {
    CHECK_THROWS_AS(
        parse_scenario("nodes = 5\nrun_ticks = 100\ncompromise = node=2 at=0 drop_rate=1\n",
                       "t0"),
        ConfigError);
}

TEST_CASE("compromising the sink is rejected") {
    CHECK_THROWS_AS(
        parse_scenario("nodes = 5\nrun_ticks = 100\ncompromise = node=0 at=5 drop_rate=1\n",
                       "sink"),
        ConfigError);
}

TEST_CASE("zero-tick runs are rejected") {
    CHECK_THROWS_AS(parse_scenario("nodes = 5\nrun_ticks = 0\n", "zero"), ConfigError);
}

TEST_CASE("unknown fields inside multi-entries are rejected") {
    CHECK_THROWS_AS(
        parse_scenario("nodes = 5\ncompromise = node=2 at=5 dorp_rate=1\n", "typo2"),
        ConfigError);
    CHECK_THROWS_AS(parse_scenario("nodes = 5\nfault = node=2 at=5 pattern=sometimes\n",
                                   "pattern"),
                    ConfigError);
}

TEST_CASE("unsimulated attacks from the taxonomy are named, not silently dropped") {
    try {
        parse_scenario("nodes = 5\ncompromise = node=2 at=5 wormhole=1\n", "wh");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("not simulated") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scenario("nodes = 5\ncompromise = node=2 at=5 sybil=1\n", "sy"),
                    ConfigError);
}

TEST_CASE("pos lines must cover all nodes exactly once") {
    CHECK_THROWS_AS(parse_scenario("nodes = 3\npos = 0 1 1\npos = 1 2 2\n", "missing"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_scenario("nodes = 2\npos = 0 1 1\npos = 0 2 2\npos = 1 3 3\n", "dup"),
        ConfigError);
    const Scenario ok =
        parse_scenario("nodes = 2\npos = 0 10 10\npos = 1 20 20\n", "ok");
    REQUIRE(ok.explicit_positions.size() == 2);
    CHECK(ok.explicit_positions[1].x == 20);
}

TEST_CASE("explicit positions must lie inside the field rectangle") {
    CHECK_THROWS_AS(
        parse_scenario("nodes = 2\nfield_w = 50\nfield_h = 50\npos = 0 10 10\npos = 1 60 10\n",
                       "oob"),
        ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
    const Scenario sc =
        parse_scenario("# full line comment\n\nnodes = 4  # trailing\nrun_ticks = 50\n",
                       "comments");
    CHECK(sc.nodes == 4);
}

TEST_CASE("probe validation") {
    CHECK_THROWS_AS(parse_scenario("nodes = 3\nprobe = from=1 to=1 at=10\n", "self"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario("nodes = 3\nprobe = from=1 to=9 at=10\n", "range"),
                    ConfigError);
    const Scenario ok = parse_scenario("nodes = 3\nprobe = from=1 to=2 at=10 slack=0\n", "p");
    REQUIRE(ok.probes.size() == 1);
    CHECK(ok.probes[0].slack == 0u);
}

TEST_CASE("every preset parses and validates") {
    for (const auto& name : preset_names()) {
        const Scenario sc = preset_scenario(name);
        CHECK(sc.nodes >= 2);
        CHECK(sc.run_ticks > 0);
    }
}

TEST_CASE("the collusion presets wire groups to their targets") {
    const Scenario bm = preset_scenario("bad-mouth");
    REQUIRE(bm.schedule.collusions.size() == 1);
    CHECK(bm.schedule.collusions[0].direction == CollusionSpec::Direction::BadMouth);
    CHECK(bm.plain_majority);
    std::size_t colluders = 0;
    for (const auto& e : bm.schedule.entries)
        if (e.attack && e.attack->collusion_group) ++colluders;
    CHECK(colluders == 2);

    const Scenario fp = preset_scenario("false-praise");
    REQUIRE(fp.schedule.collusions.size() == 1);
    CHECK(fp.schedule.collusions[0].direction == CollusionSpec::Direction::FalsePraise);
}
