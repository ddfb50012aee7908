#include "wsn/routing.hpp"

namespace wsn {

std::optional<NodeId> next_hop(const Location& self, const Location& dst,
                               std::span<const RouteCandidate> candidates) {
    const double self_dist = distance(self, dst);
    std::optional<NodeId> best;
    double best_dist = self_dist;
    for (const RouteCandidate& c : candidates) {
        if (!c.eligible) continue;
        const double d = distance(c.loc, dst);
        if (d >= self_dist) continue;  // must make strict progress
        if (!best || d < best_dist || (d == best_dist && c.id < *best)) {
            best = c.id;
            best_dist = d;
        }
    }
    return best;
}

}  // namespace wsn
