#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wsn/rng.hpp"
#include "wsn/types.hpp"

namespace wsn {

struct Location {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Location& a, const Location& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Static node placement over a rectangular field with unit-disk connectivity.
// Neighborship uses a closed boundary: distance == radio_range connects.
class Topology {
public:
    Topology(std::vector<Location> positions, double radio_range, double field_w,
             double field_h);

    std::size_t size() const { return positions_.size(); }
    double radio_range() const { return radio_range_; }
    double field_w() const { return field_w_; }
    double field_h() const { return field_h_; }

    const Location& position(NodeId id) const;
    const std::vector<NodeId>& neighbors(NodeId id) const;
    bool are_neighbors(NodeId a, NodeId b) const;

    // Displaces one node and rebuilds the affected adjacency. Only compromised
    // nodes move; honest positions are immutable after deployment.
    void move(NodeId id, const Location& to);

    // Text dump/load, one line per node: node_id,x,y
    void save(const std::string& path) const;
    static std::vector<Location> load_positions(const std::string& path);

private:
    void rebuild(NodeId id);

    std::vector<Location> positions_;
    std::vector<std::vector<NodeId>> adjacency_;
    double radio_range_;
    double field_w_;
    double field_h_;
};

// n independent uniform positions; deterministic for a given stream.
std::vector<Location> place_uniform(std::size_t n, double field_w, double field_h,
                                    RandomStream& stream);

}  // namespace wsn
