#include <cmath>

#include "doctest.h"
#include "wsn/rng.hpp"
#include "wsn/topology.hpp"

using namespace wsn;

TEST_CASE("a single node has no neighbors regardless of range") {
    Topology t({{10, 10}}, 1000, 100, 100);
    CHECK(t.neighbors(0).empty());
}

TEST_CASE("closed boundary: distance exactly radio_range connects") {
    Topology t({{0, 0}, {50, 0}, {50.0001, 50}}, 50, 100, 100);
    CHECK(t.are_neighbors(0, 1));       // exactly 50
    CHECK_FALSE(t.are_neighbors(1, 2)); // 50.0001
}

TEST_CASE("unknown node id is a lookup error") {
    Topology t({{0, 0}, {1, 1}}, 10, 10, 10);
    CHECK_THROWS_AS(t.neighbors(7), ConfigError);
}

TEST_CASE("neighbor relation is symmetric on a random 100-node topology") {
    StreamSet streams(7);
    auto pos = place_uniform(100, 300, 300, streams.stream_for("deploy"));
    Topology t(std::move(pos), 60, 300, 300);
    for (NodeId i = 0; i < 100; ++i)
        for (NodeId j = 0; j < 100; ++j)
            CHECK(t.are_neighbors(i, j) == t.are_neighbors(j, i));
}

TEST_CASE("same stream twice gives identical positions") {
    StreamSet a(55), b(55);
    auto pa = place_uniform(20, 100, 100, a.stream_for("deploy"));
    auto pb = place_uniform(20, 100, 100, b.stream_for("deploy"));
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa[i].x == pb[i].x);
        CHECK(pa[i].y == pb[i].y);
    }
}

TEST_CASE("mean degree approaches n*pi*r^2/area on 1000 nodes") {
    // Monte-Carlo expectation over 20 seeds; the 15% band absorbs edge
    // effects of the finite field.
    const std::size_t n = 1000;
    const double field = 500.0, range = 50.0;
    const double expected = n * M_PI * range * range / (field * field);
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        StreamSet streams(seed);
        Topology t(place_uniform(n, field, field, streams.stream_for("deploy")), range,
                   field, field);
        std::size_t degree_sum = 0;
        for (NodeId i = 0; i < n; ++i) degree_sum += t.neighbors(i).size();
        total += static_cast<double>(degree_sum) / n;
    }
    const double mean_degree = total / 20.0;
    CHECK(mean_degree > expected * 0.85);
    CHECK(mean_degree < expected * 1.15);
}

TEST_CASE("move rebuilds adjacency consistently") {
    Topology t({{0, 0}, {40, 0}, {200, 0}}, 50, 300, 100);
    CHECK(t.are_neighbors(0, 1));
    CHECK_FALSE(t.are_neighbors(1, 2));
    t.move(1, {170, 0});
    CHECK_FALSE(t.are_neighbors(0, 1));
    CHECK(t.are_neighbors(1, 2));
    for (NodeId i = 0; i < 3; ++i)
        for (NodeId j = 0; j < 3; ++j) CHECK(t.are_neighbors(i, j) == t.are_neighbors(j, i));
}

TEST_CASE("topology dump/load round-trips") {
    StreamSet streams(3);
    auto pos = place_uniform(15, 120, 80, streams.stream_for("deploy"));
    Topology t(pos, 40, 120, 80);
    const std::string path = "topo_roundtrip_test.txt";
    t.save(path);
    auto loaded = Topology::load_positions(path);
    REQUIRE(loaded.size() == pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        CHECK(loaded[i].x == doctest::Approx(pos[i].x).epsilon(1e-9));
        CHECK(loaded[i].y == doctest::Approx(pos[i].y).epsilon(1e-9));
    }
    std::remove(path.c_str());
}
