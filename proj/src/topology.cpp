#include "wsn/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace wsn {

Topology::Topology(std::vector<Location> positions, double radio_range, double field_w,
                   double field_h)
    : positions_(std::move(positions)),
      radio_range_(radio_range),
      field_w_(field_w),
      field_h_(field_h) {
    if (positions_.empty()) throw ConfigError("topology requires at least one node");
    if (radio_range_ <= 0.0) throw ConfigError("radio_range must be positive");
    adjacency_.resize(positions_.size());
    for (NodeId i = 0; i < positions_.size(); ++i) {
        for (NodeId j = static_cast<NodeId>(i + 1); j < positions_.size(); ++j) {
            if (distance(positions_[i], positions_[j]) <= radio_range_) {
                adjacency_[i].push_back(j);
                adjacency_[j].push_back(i);
            }
        }
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

const Location& Topology::position(NodeId id) const {
    if (id >= positions_.size()) throw ConfigError("unknown node id " + std::to_string(id));
    return positions_[id];
}

const std::vector<NodeId>& Topology::neighbors(NodeId id) const {
    if (id >= adjacency_.size()) throw ConfigError("unknown node id " + std::to_string(id));
    return adjacency_[id];
}

bool Topology::are_neighbors(NodeId a, NodeId b) const {
    if (a == b) return false;
    const auto& row = neighbors(a);
    return std::binary_search(row.begin(), row.end(), b);
}

void Topology::move(NodeId id, const Location& to) {
    position(id);  // bounds check
    positions_[id] = to;
    rebuild(id);
}

void Topology::rebuild(NodeId id) {
    for (NodeId other = 0; other < positions_.size(); ++other) {
        if (other == id) continue;
        auto& row = adjacency_[other];
        row.erase(std::remove(row.begin(), row.end(), id), row.end());
    }
    adjacency_[id].clear();
    for (NodeId other = 0; other < positions_.size(); ++other) {
        if (other == id) continue;
        if (distance(positions_[id], positions_[other]) <= radio_range_) {
            adjacency_[id].push_back(other);
            adjacency_[other].push_back(id);
        }
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

void Topology::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write topology file " + path);
    out.precision(12);
    for (NodeId i = 0; i < positions_.size(); ++i)
        out << i << "," << positions_[i].x << "," << positions_[i].y << "\n";
}

std::vector<Location> Topology::load_positions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read topology file " + path);
    std::vector<Location> positions;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string id_s, x_s, y_s;
        if (!std::getline(ls, id_s, ',') || !std::getline(ls, x_s, ',') ||
            !std::getline(ls, y_s))
            throw ConfigError("topology file " + path + " line " +
                              std::to_string(lineno) + ": expected node_id,x,y");
        std::size_t id = std::stoul(id_s);
        if (id != positions.size())
            throw ConfigError("topology file " + path + " line " +
                              std::to_string(lineno) + ": ids must be dense from 0");
        positions.push_back({std::stod(x_s), std::stod(y_s)});
    }
    if (positions.empty()) throw ConfigError("topology file " + path + " is empty");
    return positions;
}

std::vector<Location> place_uniform(std::size_t n, double field_w, double field_h,
                                    RandomStream& stream) {
    if (n < 1) throw ConfigError("node count must be >= 1");
    if (field_w <= 0.0 || field_h <= 0.0) throw ConfigError("field dimensions must be positive");
    std::vector<Location> positions;
    positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        positions.push_back({stream.uniform() * field_w, stream.uniform() * field_h});
    return positions;
}

}  // namespace wsn
