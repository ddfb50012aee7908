#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wsn/topology.hpp"
#include "wsn/types.hpp"

namespace wsn {

struct RouteCandidate {
    NodeId id = 0;
    Location loc;
    bool eligible = true;  // trusted enough and not isolated
};

// Greedy geographic forwarding: the eligible neighbor strictly closer to the
// destination than self, with maximal progress; ties break to the lowest id.
// nullopt is a routing void; the caller counts it and drops the packet.
std::optional<NodeId> next_hop(const Location& self, const Location& dst,
                               std::span<const RouteCandidate> candidates);

}  // namespace wsn
