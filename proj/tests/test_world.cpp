#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "wsn/world.hpp"

using namespace wsn;

namespace {

Scenario base(std::vector<Location> pos, SimTime run_ticks) {
    Scenario sc;
    sc.nodes = pos.size();
    sc.explicit_positions = std::move(pos);
    sc.field_w = 300;
    sc.field_h = 300;
    sc.radio_range = 60;
    sc.run_ticks = run_ticks;
    sc.sense_sigma = 0.0;
    return sc;
}

std::size_t count_rows(const std::vector<RuleEventRow>& rows, Rule rule, Polarity pol,
                       NodeId subject) {
    return std::count_if(rows.begin(), rows.end(), [&](const RuleEventRow& r) {
        return r.rule == rule && r.polarity == pol && r.subject == subject;
    });
}

}  // namespace

TEST_CASE("honest lossless chain: full delivery, no negatives, no alerts") {
    // sink(0) <- 1 <- 2, spacing 50.
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}}, 100000);
    World w(sc, 1);
    w.run();
    const auto report = w.report();
    CHECK(report.delivery_ratio == doctest::Approx(1.0));
    CHECK(report.alerts == 0);
    CHECK(report.isolation_events == 0);
    CHECK(report.auth_failures_hopwise == 0);
    CHECK(report.auth_failures_e2e == 0);
    for (const auto& row : w.rule_events()) CHECK(row.polarity != Polarity::Negative);
    // Pure positive history keeps full trust everywhere.
    for (NodeId id = 0; id < 3; ++id)
        for (const auto& [subject, rec] : w.node(id).trust.records())
            CHECK(rec.trust == 1.0);
}

TEST_CASE("ack case (ii): lost acks with the forward overheard give no judgment") {
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}}, 100000);
    sc.watchdog.p_watch = 1.0;  // node 2 watches every send
    World w(sc, 1);
    // Kill every ACK addressed to node 2; data and everything else flows.
    w.channel().set_drop_filter([](NodeId receiver, const Frame& f) {
        if (receiver != 2) return false;
        const auto pkt = decode(f.bytes);
        return pkt && pkt->header.handler == HandlerId::Ack && pkt->header.dst == 2;
    });
    w.run();
    // Node 1 forwards everything; node 2 sees the forwards, so the missing
    // acks stay channel ambiguity: zero negative ACK evidence at node 2.
    const auto& rows = w.rule_events();
    for (const auto& row : rows) {
        if (row.observer == 2 && row.rule == Rule::Ack)
            CHECK(row.polarity != Polarity::Negative);
    }
    const auto* rec = w.node(2).trust.find(1);
    REQUIRE(rec != nullptr);
    CHECK(rec->negative == 0.0);
}

TEST_CASE("ack case (iii): a blackhole hop draws negative evidence and is isolated") {
    // sink(0,0) - B(50,0) - senders 2(100,0), 3(95,30). B relays both.
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}, {95, 30}}, 200000);
    sc.watchdog.p_watch = 1.0;
    CompromiseEntry e;
    e.node = 1;
    e.at = 30000;
    AttackProfile a;
    a.drop_rate = 1.0;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    const auto report = w.report();

    CHECK(count_rows(w.rule_events(), Rule::Ack, Polarity::Negative, 1) > 10);
    CHECK(w.node(2).trust.is_isolated(1));
    CHECK(w.node(3).trust.is_isolated(1));
    CHECK(report.detection_rate == doctest::Approx(1.0));
    CHECK(report.false_positive_rate == doctest::Approx(0.0));
    CHECK(std::isfinite(report.mean_time_to_isolation));
    // The drop window between activation and isolation costs real traffic.
    CHECK(report.delivery_ratio < 0.9);
}

TEST_CASE("trust trajectory of a blackhole is non-increasing at every honest neighbor") {
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}, {95, 30}}, 300000);
    sc.watchdog.p_watch = 1.0;
    CompromiseEntry e;
    e.node = 1;
    e.at = 50000;  // epoch 5
    AttackProfile a;
    a.drop_rate = 1.0;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    // Observers with first-hand evidence: the two senders routing through
    // node 1. (The sink is infrastructure and keeps no records.)
    for (NodeId observer : {NodeId{2}, NodeId{3}}) {
        double last = 2.0;
        for (const auto& row : w.trajectories()) {
            if (row.observer != observer || row.subject != 1) continue;
            if (row.epoch < 5) continue;
            CHECK(row.trust <= last + 1e-12);
            last = row.trust;
        }
        CHECK(last < 0.25);  // crossed theta
    }
}

TEST_CASE("a faulty alterer is blamed hop-wise by every hearer") {
    // sink(0) <- 1 <- 2 with node 1 corrupting frames after MACing them.
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}}, 120000);
    CompromiseEntry e;
    e.node = 1;
    e.at = 10000;
    FaultProfile f;
    f.alter_rate = 1.0;
    e.fault = f;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    const auto report = w.report();
    CHECK(report.auth_failures_hopwise > 0);
    CHECK(count_rows(w.rule_events(), Rule::Auth, Polarity::Negative, 1) > 0);
    // End-to-end failures stay out of it: the corrupted frames died hop-wise.
    CHECK(report.auth_failures_e2e == 0);
}

TEST_CASE("a compromised alterer survives hop checks; only the sink's e2e tag fails") {
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}}, 120000);
    CompromiseEntry e;
    e.node = 1;
    e.at = 10000;
    AttackProfile a;
    a.alter_rate = 1.0;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    const auto report = w.report();
    CHECK(report.auth_failures_e2e > 0);
    CHECK(report.auth_failures_hopwise == 0);
    CHECK(count_rows(w.rule_events(), Rule::Auth, Polarity::Negative, 1) == 0);
    // No neighbor gets blamed for the tampering.
    CHECK(count_rows(w.rule_events(), Rule::DataValid, Polarity::Negative, 2) == 0);
    // Node 2's reports all die at the sink's end-to-end check; node 1's own
    // honest reports still land, so delivery sits near one half.
    CHECK(report.delivery_ratio < 0.7);
}

TEST_CASE("a delay attacker beats the ack rule but not the watchers") {
    // sink <- 1 <- 2 plus watcher 3 in range of both: node 1 acks promptly
    // and forwards half a second late, past the third-party deadline.
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}, {95, 30}}, 200000);
    sc.watchdog.p_watch = 1.0;
    CompromiseEntry e;
    e.node = 1;
    e.at = 20000;
    AttackProfile a;
    a.delay_ticks = 500;  // > t_watch = 4 * 80
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    // The sender keeps getting its hop acks: no sender-side negatives, but
    // overhearing watchers flag the missing forwards.
    CHECK(count_rows(w.rule_events(), Rule::Ack, Polarity::Negative, 1) > 10);
    CHECK(w.node(3).trust.trust_of(1) < 1.0);
    // Delivery survives: the packets do arrive, just late.
    CHECK(w.report().delivery_ratio > 0.9);
}

TEST_CASE("replayed duplicates are detected and blamed on the transmitter") {
    // 4-hop chain: node 2 replays node 3's reports; the duplicate lands at
    // sensor node 1, which holds records (unlike the sink) and blames node 2.
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}, {150, 0}}, 120000);
    CompromiseEntry e;
    e.node = 2;
    e.at = 10000;
    AttackProfile a;
    a.replay_rate = 1.0;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    const auto report = w.report();
    CHECK(report.replays_detected > 0);
    CHECK(count_rows(w.rule_events(), Rule::Traffic, Polarity::Negative, 2) > 0);
}

TEST_CASE("an activated all-zero profile leaves the trace bit-identical") {
    auto run_trace = [](bool with_zero_profile) {
        Scenario sc = base({{0, 0}, {50, 0}, {100, 0}, {95, 30}}, 80000);
        sc.trace = true;
        if (with_zero_profile) {
            CompromiseEntry e;
            e.node = 2;
            e.at = 5000;
            e.attack = AttackProfile{};  // all zero
            sc.schedule.entries.push_back(e);
        }
        World w(sc, 7);
        w.run();
        return w.trace_text();
    };
    const std::string with = run_trace(true);
    CHECK(with == run_trace(false));
    CHECK(!with.empty());
}

TEST_CASE("relocation: in-situ direct zero at the first post-move beacon, no voting") {
    // Star: node 5 in the middle of neighbors 1..4, sink far but connected
    // through node 1.
    Scenario sc =
        base({{0, 30}, {50, 30}, {100, 60}, {100, 0}, {140, 30}, {95, 30}}, 200000);
    CompromiseEntry e;
    e.node = 5;
    e.at = 50000;
    AttackProfile a;
    a.relocate_by = Displacement{10.0, 0.0};  // 2 * eps_loc
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run_until(50000 + sc.beacon_period + 1000);
    std::size_t zeroed = 0;
    for (NodeId nb : w.topology().neighbors(5)) {
        const auto* rec = w.node(nb).trust.find(5);
        if (rec && rec->status == TrustStatus::Isolated) {
            CHECK(rec->trust == 0.0);
            ++zeroed;
        }
    }
    CHECK(zeroed == w.topology().neighbors(5).size());
    CHECK(count_rows(w.rule_events(), Rule::Insitu, Polarity::DirectZero, 5) == zeroed);
    // Direct zero, not a verdict: no vote deadline was needed.
    const auto report = w.report();
    CHECK(report.isolation_events == zeroed);
}

TEST_CASE("code_delta: memory-consistency direct zero at the first tampered beacon") {
    Scenario sc = base({{0, 30}, {50, 30}, {100, 60}, {100, 0}, {95, 30}}, 200000);
    CompromiseEntry e;
    e.node = 4;
    e.at = 50000;
    AttackProfile a;
    a.code_delta = true;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run_until(50000 + sc.beacon_period + 1000);
    for (NodeId nb : w.topology().neighbors(4)) {
        const auto* rec = w.node(nb).trust.find(4);
        REQUIRE(rec != nullptr);
        CHECK(rec->status == TrustStatus::Isolated);
        CHECK(rec->trust == 0.0);
    }
    CHECK(count_rows(w.rule_events(), Rule::Memory, Polarity::DirectZero, 4) ==
          w.topology().neighbors(4).size());
}

TEST_CASE("fabricated readings are caught by the data-validation rule") {
    // Cluster of 7 sensors around the sink; everyone hears everyone.
    std::vector<Location> pos{{50, 50},  {70, 50}, {60, 67}, {40, 67},
                              {30, 50},  {40, 33}, {60, 33}, {50, 70}};
    Scenario sc = base(pos, 300000);
    sc.sense_sigma = 1.0;
    CompromiseEntry e;
    e.node = 1;
    e.at = 30000;
    AttackProfile a;
    a.data_bias.offset = 10.0;  // 10 sigma above the field
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 3);
    w.run();
    CHECK(count_rows(w.rule_events(), Rule::DataValid, Polarity::Negative, 1) > 50);
    // Flagged in at least 95% of the observer-epoch windows that judged it.
    std::set<std::pair<NodeId, SimTime>> flagged;
    std::size_t clean = 0;
    for (const auto& row : w.rule_events()) {
        if (row.rule != Rule::DataValid || row.subject != 1) continue;
        // Epoch-boundary positives summarize the epoch that just closed, so
        // anything at or before the first post-activation boundary still
        // describes honest history.
        if (row.tick <= 40000) continue;
        if (row.polarity == Polarity::Negative)
            flagged.insert({row.observer, row.tick / sc.epoch});
        else
            ++clean;
    }
    REQUIRE(flagged.size() + clean > 0);
    CHECK(flagged.size() >= 19 * (flagged.size() + clean) / 20);
    // Trust in the fabricator collapses at the honest neighborhood.
    std::size_t suspicious = 0;
    for (NodeId o = 2; o < sc.nodes; ++o) {
        const auto* rec = w.node(o).trust.find(1);
        if (rec && rec->status != TrustStatus::Active) ++suspicious;
    }
    CHECK(suspicious >= 5);
}

TEST_CASE("a bias below the k-sigma floor stays effectively invisible") {
    // Same neighborhood, 0.5 sigma offset instead of 10: the rule's blind
    // spot. A handful of small-sample flags can occur, but nothing close to
    // detection: trust stays high at every honest observer.
    std::vector<Location> pos{{50, 50},  {70, 50}, {60, 67}, {40, 67},
                              {30, 50},  {40, 33}, {60, 33}, {50, 70}};
    Scenario sc = base(pos, 300000);
    sc.sense_sigma = 1.0;
    CompromiseEntry e;
    e.node = 1;
    e.at = 30000;
    AttackProfile a;
    a.data_bias.offset = 0.5;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 3);
    w.run();
    // ~810 judgments happen; small-sample sigma noise flags a few percent.
    const auto negatives = count_rows(w.rule_events(), Rule::DataValid, Polarity::Negative, 1);
    CHECK(negatives < 120);
    for (NodeId o = 2; o < sc.nodes; ++o) {
        const auto* rec = w.node(o).trust.find(1);
        if (rec) CHECK(rec->trust > 0.8);
    }
    CHECK_FALSE(w.report().detection_rate > 0.0);
}

TEST_CASE("received votes and alerts never touch the counters") {
    // Node 2 bad-mouths node 1 every epoch; observer 3 and the sink hold
    // honest records. The target's counters at honest observers only ever
    // move on first-hand rule events.
    std::vector<Location> pos{{50, 50}, {50, 80}, {80, 50}, {20, 50}};
    Scenario sc = base(pos, 200000);
    CompromiseEntry e;
    e.node = 2;
    e.at = 20000;
    AttackProfile a;
    a.collusion_group = 1;
    e.attack = a;
    sc.schedule.entries.push_back(e);
    sc.schedule.collusions.push_back({1, 1, CollusionSpec::Direction::BadMouth});

    World w(sc, 1);
    w.run();
    const auto report = w.report();
    CHECK(report.alerts > 0);  // the accusations really flowed
    const auto* rec = w.node(3).trust.find(1);
    REQUIRE(rec != nullptr);
    CHECK(rec->negative == 0.0);
    CHECK(rec->status == TrustStatus::Active);
    CHECK_FALSE(w.node(3).trust.is_isolated(1));
    CHECK_FALSE(w.node(0).trust.is_isolated(1));
    CHECK(report.false_positive_rate == doctest::Approx(0.0));
}

TEST_CASE("sinkhole: spoofed beacons capture routing until trust collapses") {
    // sink(0,0); honest hop 1(50,0); reporter 2(100,0); sinkhole 3(105,30).
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}, {105, 30}}, 300000);
    sc.watchdog.p_watch = 1.0;
    CompromiseEntry e;
    e.node = 3;
    e.at = 1000;  // before the first beacons: the spoof is its first word
    AttackProfile a;
    a.sinkhole = true;
    a.drop_rate = 1.0;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    // The victim believed the spoofed location...
    const auto& believed = w.node(2).known_loc.at(3);
    CHECK(distance(believed, {0, 0}) < 5.0);
    // ...sent traffic into the trap (negative ack evidence names node 3)...
    CHECK(count_rows(w.rule_events(), Rule::Ack, Polarity::Negative, 3) > 0);
    // ...and eventually walled it off and recovered a route via node 1.
    CHECK(w.node(2).trust.trust_of(3) < 0.25);
}

TEST_CASE("jamming drives delivery alarms on the jammed side of the field") {
    // Cluster A (nodes 1,2) near the jammer; cluster B (nodes 3,4) far away.
    // With overlap losses on, honest self-collisions add some noise, so the
    // check is a strong asymmetry rather than strict exclusivity.
    std::vector<Location> pos{{100, 50}, {45, 50},  {45, 80},
                              {155, 50}, {155, 80}, {20, 50}};
    Scenario sc = base(pos, 400000);
    sc.collision_window = kAirtimeTicks;
    sc.end_to_end_ack = true;
    sc.watchdog.theta_pdr = 0.5;
    CompromiseEntry e;
    e.node = 5;
    e.at = 20000;
    AttackProfile a;
    a.jam_rate = 0.25;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    const auto report = w.report();
    CHECK(report.jam_alarms > 0);
    std::size_t jammed_side = 0, far_side = 0;
    for (const auto& row : w.rule_events()) {
        if (row.rule != Rule::PdrSelf) continue;
        if (row.observer == 1 || row.observer == 2)
            ++jammed_side;
        else
            ++far_side;
    }
    CHECK(jammed_side >= 20);
    CHECK(far_side * 4 <= jammed_side);
}

TEST_CASE("remote trust query on the 4-node line") {
    // 0(0,0) 1(30,0) 2(60,0) 3(90,0), range 30: h = ceil(90/30) = 3.
    Scenario sc = base({{0, 0}, {30, 0}, {60, 0}, {90, 0}}, 400000);
    sc.radio_range = 30;
    sc.probes.push_back({0, 3, 30000, std::nullopt});   // before any trouble
    sc.probes.push_back({0, 3, 250000, std::nullopt});  // after the middle dies
    CompromiseEntry e;
    e.node = 2;
    e.at = 100000;
    AttackProfile a;
    a.code_delta = true;  // direct zero at its first tampered beacon
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    const auto& outcomes = w.probe_outcomes();
    REQUIRE(outcomes.size() == 2);
    CHECK(outcomes[0].hop_estimate == 3);
    CHECK(outcomes[0].result == ProbeResult::Trusted);
    CHECK(outcomes[1].result == ProbeResult::Untrusted);
}

TEST_CASE("a lost probe is undecided; a configured retry recovers it") {
    Scenario sc = base({{0, 0}, {40, 0}, {80, 0}}, 200000);
    sc.probes.push_back({0, 2, 20000, std::nullopt});
    sc.probe_retries = 1;
    World w(sc, 1);
    // Swallow the first probe request seen by node 1; the retry gets through.
    int killed = 0;
    w.channel().set_drop_filter([&killed](NodeId receiver, const Frame& f) {
        if (receiver != 1 || killed > 0) return false;
        const auto pkt = decode(f.bytes);
        if (pkt && pkt->header.handler == HandlerId::TrustProbe) {
            ++killed;
            return true;
        }
        return false;
    });
    w.run();
    REQUIRE(w.probe_outcomes().size() == 1);
    CHECK(killed == 1);
    CHECK(w.probe_outcomes()[0].result == ProbeResult::Trusted);
}

TEST_CASE("with no retries a swallowed probe resolves to undecided") {
    Scenario sc = base({{0, 0}, {40, 0}, {80, 0}}, 200000);
    sc.probes.push_back({0, 2, 20000, std::nullopt});
    World w(sc, 1);
    w.channel().set_drop_filter([](NodeId receiver, const Frame& f) {
        if (receiver != 1) return false;
        const auto pkt = decode(f.bytes);
        return pkt && pkt->header.handler == HandlerId::TrustProbe;
    });
    w.run();
    REQUIRE(w.probe_outcomes().size() == 1);
    CHECK(w.probe_outcomes()[0].result == ProbeResult::Undecided);
}

TEST_CASE("a trusted direct neighbor resolves the probe in one hop") {
    Scenario sc = base({{0, 0}, {40, 0}, {80, 0}}, 100000);
    sc.probes.push_back({0, 1, 20000, std::nullopt});
    World w(sc, 1);
    w.run();
    REQUIRE(w.probe_outcomes().size() == 1);
    CHECK(w.probe_outcomes()[0].hop_estimate == 1);
    CHECK(w.probe_outcomes()[0].result == ProbeResult::Trusted);
}

TEST_CASE("an isolated node's packets are dropped wholesale by isolating neighbors") {
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}, {95, 30}}, 300000);
    sc.watchdog.p_watch = 1.0;
    CompromiseEntry e;
    e.node = 1;
    e.at = 30000;
    AttackProfile a;
    a.drop_rate = 1.0;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    REQUIRE(w.node(2).trust.is_isolated(1));
    // After isolation node 1 kept beaconing, but node 2's record is frozen:
    // an isolated record never transitions out and collects no new evidence.
    const auto* rec = w.node(2).trust.find(1);
    CHECK(rec->status == TrustStatus::Isolated);
    // Isolated voters carry no weight at node 2 from here on.
    CHECK(w.node(2).trust.vote_weight(1) == 0.0);
}

TEST_CASE("a bogus-query attacker trips the traffic-awareness rule") {
    // Cluster: expected originations are epoch/sensing_period = 5; the
    // attacker adds a query per sensing tick, pushing it past 5 * 1.5.
    std::vector<Location> pos{{50, 50}, {70, 50}, {60, 67}, {40, 67}, {30, 50}};
    Scenario sc = base(pos, 200000);
    CompromiseEntry e;
    e.node = 1;
    e.at = 20000;
    AttackProfile a;
    a.bogus_query_rate = 1.0;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    // One negative per observing neighbor per epoch once the queries flow;
    // honest neighbors stay in the expected band throughout.
    CHECK(count_rows(w.rule_events(), Rule::Traffic, Polarity::Negative, 1) > 30);
    CHECK(count_rows(w.rule_events(), Rule::Traffic, Polarity::Negative, 2) == 0);
    CHECK(count_rows(w.rule_events(), Rule::Traffic, Polarity::Negative, 3) == 0);
}

TEST_CASE("pdr alarm uses a strict threshold: exactly theta stays quiet") {
    // Chain sink <- 1 <- 2 with end-to-end acks; a deterministic filter kills
    // exactly one of every five e2e acks bound for node 2: pdr == 0.8.
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}}, 400000);
    sc.end_to_end_ack = true;
    sc.watchdog.theta_pdr = 0.8;
    World w(sc, 1);
    int counter = 0;
    w.channel().set_drop_filter([&counter](NodeId receiver, const Frame& f) {
        if (receiver != 2) return false;
        const auto pkt = decode(f.bytes);
        if (!pkt || pkt->header.handler != HandlerId::Ack) return false;
        const auto opened =
            AckPayload::from_bytes(std::vector<std::uint8_t>{});  // cannot decrypt here
        (void)opened;
        return (++counter % 5) == 0;  // every 5th ack frame toward node 2
    });
    w.run();
    std::size_t alarms_node2 = 0;
    for (const auto& row : w.rule_events())
        if (row.rule == Rule::PdrSelf && row.observer == 2) ++alarms_node2;
    // Node 2 receives hop acks and e2e acks; dropping every 5th ack frame
    // leaves its per-epoch delivered fraction at or above theta, so the
    // strict comparison keeps it quiet.
    CHECK(alarms_node2 == 0);
    CHECK(w.report().jam_alarms == 0);
}

TEST_CASE("rule-event invariants hold over a full adversarial run") {
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}, {95, 30}}, 200000);
    sc.watchdog.p_watch = 1.0;
    CompromiseEntry e;
    e.node = 1;
    e.at = 30000;
    AttackProfile a;
    a.drop_rate = 1.0;
    e.attack = a;
    sc.schedule.entries.push_back(e);

    World w(sc, 1);
    w.run();
    for (const auto& row : w.rule_events()) {
        // Locality: every judgment names a radio neighbor (or self for PDR).
        if (row.rule == Rule::PdrSelf)
            CHECK(row.observer == row.subject);
        else
            CHECK(w.topology().are_neighbors(row.observer, row.subject));
        // Only the memory-consistency and in-situ rules may zero directly.
        if (row.polarity == Polarity::DirectZero)
            CHECK((row.rule == Rule::Memory || row.rule == Rule::Insitu));
    }
}

TEST_CASE("greedy forwarding strictly approaches the sink on every traced hop") {
    Scenario sc = base({{0, 0}, {50, 0}, {100, 0}, {95, 30}, {140, 20}}, 100000);
    World w(sc, 1);
    w.run();
    // Delivery at 1.0 in a lossless honest run implies no loops were
    // possible; the routing unit tests pin the strict-progress rule itself.
    CHECK(w.report().delivery_ratio == doctest::Approx(1.0));
    CHECK(w.report().routing_failures == 0);
}
