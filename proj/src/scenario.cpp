#include "wsn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wsn {

void Scenario::validate() const {
    if (nodes < 2) throw ConfigError("nodes must be >= 2 (sink plus sensors)");
    if (nodes > 0xFFFE) throw ConfigError("nodes must fit a 2-byte id space");
    if (field_w <= 0.0 || field_h <= 0.0) throw ConfigError("field dimensions must be positive");
    if (radio_range <= 0.0) throw ConfigError("radio_range must be positive");
    if (loss_prob < 0.0 || loss_prob > 1.0) throw ConfigError("loss_prob must be in [0,1]");
    if (sensing_period == 0) throw ConfigError("sensing_period must be positive");
    if (beacon_period == 0) throw ConfigError("beacon_period must be positive");
    if (epoch == 0) throw ConfigError("epoch must be positive");
    if (run_ticks == 0) throw ConfigError("run length must be > 0");
    if (replicas == 0) throw ConfigError("replicas must be >= 1");
    if (sense_sigma < 0.0) throw ConfigError("sense_sigma must be non-negative");
    if (sigma_min_frac < 0.0) throw ConfigError("sigma_min_frac must be non-negative");
    if (theta_route < 0.0 || theta_route >= 1.0)
        throw ConfigError("theta_route must be in [0,1)");
    if (rc5_rounds < 1 || rc5_rounds > 32) throw ConfigError("rc5_rounds must be in [1,32]");
    if (!explicit_positions.empty()) {
        if (!topology_file.empty())
            throw ConfigError("pos lines and topology_file are mutually exclusive");
        if (explicit_positions.size() != nodes)
            throw ConfigError("pos lines cover " + std::to_string(explicit_positions.size()) +
                              " nodes, scenario declares " + std::to_string(nodes));
        for (std::size_t i = 0; i < explicit_positions.size(); ++i) {
            const Location& l = explicit_positions[i];
            if (l.x < 0.0 || l.x > field_w || l.y < 0.0 || l.y > field_h)
                throw ConfigError("pos line for node " + std::to_string(i) +
                                  " lies outside the field rectangle");
        }
    }
    watchdog.validate();
    trust.validate();
    schedule.validate(nodes, 0);
    for (const auto& p : probes) {
        if (p.from >= nodes || p.to >= nodes)
            throw ConfigError("probe references an unknown node id");
        if (p.from == p.to) throw ConfigError("probe querier and remote must differ");
        if (p.at == 0) throw ConfigError("probe time must be > 0");
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        unsigned long long u = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return u;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + v +
                          "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<std::pair<std::string, std::string>> parse_tokens(const std::string& key,
                                                              const std::string& value) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream ss(value);
    std::string tok;
    while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= tok.size())
            throw ConfigError("key '" + key + "': malformed token '" + tok +
                              "' (expected field=value)");
        out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    return out;
}

CompromiseEntry parse_compromise(const std::string& value) {
    CompromiseEntry e;
    AttackProfile a;
    bool have_node = false, have_at = false;
    for (const auto& [k, v] : parse_tokens("compromise", value)) {
        if (k == "node") {
            e.node = static_cast<NodeId>(parse_u64(k, v));
            have_node = true;
        } else if (k == "at") {
            e.at = parse_u64(k, v);
            have_at = true;
        } else if (k == "drop_rate") {
            a.drop_rate = parse_double(k, v);
        } else if (k == "delay_ticks") {
            a.delay_ticks = parse_u64(k, v);
        } else if (k == "alter_rate") {
            a.alter_rate = parse_double(k, v);
        } else if (k == "replay_rate") {
            a.replay_rate = parse_double(k, v);
        } else if (k == "sinkhole") {
            a.sinkhole = parse_bool(k, v);
        } else if (k == "jam_rate") {
            a.jam_rate = parse_double(k, v);
        } else if (k == "bias_offset") {
            a.data_bias.offset = parse_double(k, v);
        } else if (k == "bias_sigma") {
            a.data_bias.sigma = parse_double(k, v);
        } else if (k == "bogus_query_rate") {
            a.bogus_query_rate = parse_double(k, v);
        } else if (k == "byzantine_duty") {
            a.byzantine_duty = parse_double(k, v);
        } else if (k == "relocate_dx") {
            if (!a.relocate_by) a.relocate_by = Displacement{};
            a.relocate_by->dx = parse_double(k, v);
        } else if (k == "relocate_dy") {
            if (!a.relocate_by) a.relocate_by = Displacement{};
            a.relocate_by->dy = parse_double(k, v);
        } else if (k == "code_delta") {
            a.code_delta = parse_bool(k, v);
        } else if (k == "collusion_group") {
            a.collusion_group = static_cast<std::uint16_t>(parse_u64(k, v));
        } else if (k == "wormhole" || k == "sybil" || k == "hello_flood" ||
                   k == "node_replication") {
            // Named in the attack taxonomy but not simulated: they need
            // out-of-band channels or identity forging this model excludes.
            throw ConfigError("compromise: attack '" + k +
                              "' is recognized but not simulated");
        } else {
            throw ConfigError("compromise: unknown field '" + k + "'");
        }
    }
    if (!have_node || !have_at) throw ConfigError("compromise needs node= and at=");
    e.attack = a;
    return e;
}

CompromiseEntry parse_fault(const std::string& value) {
    CompromiseEntry e;
    FaultProfile f;
    bool have_node = false, have_at = false;
    for (const auto& [k, v] : parse_tokens("fault", value)) {
        if (k == "node") {
            e.node = static_cast<NodeId>(parse_u64(k, v));
            have_node = true;
        } else if (k == "at") {
            e.at = parse_u64(k, v);
            have_at = true;
        } else if (k == "alter_rate") {
            f.alter_rate = parse_double(k, v);
        } else if (k == "broadcast_rate") {
            f.broadcast_rate = parse_double(k, v);
        } else if (k == "sense_error_sigma") {
            f.sense_error_sigma = parse_double(k, v);
        } else if (k == "drop_rate") {
            f.drop_rate = parse_double(k, v);
        } else if (k == "pattern") {
            if (v == "persistent")
                f.pattern = FaultProfile::Pattern::Persistent;
            else if (v == "transient")
                f.pattern = FaultProfile::Pattern::Transient;
            else if (v == "probabilistic")
                f.pattern = FaultProfile::Pattern::Probabilistic;
            else
                throw ConfigError("fault: unknown pattern '" + v + "'");
        } else if (k == "transient_epochs") {
            f.transient_epochs = parse_u64(k, v);
        } else {
            throw ConfigError("fault: unknown field '" + k + "'");
        }
    }
    if (!have_node || !have_at) throw ConfigError("fault needs node= and at=");
    e.fault = f;
    return e;
}

CollusionSpec parse_collusion(const std::string& value) {
    CollusionSpec c;
    for (const auto& [k, v] : parse_tokens("collusion", value)) {
        if (k == "group") {
            c.group = static_cast<std::uint16_t>(parse_u64(k, v));
        } else if (k == "target") {
            c.target = static_cast<NodeId>(parse_u64(k, v));
        } else if (k == "direction") {
            if (v == "badmouth")
                c.direction = CollusionSpec::Direction::BadMouth;
            else if (v == "falsepraise")
                c.direction = CollusionSpec::Direction::FalsePraise;
            else
                throw ConfigError("collusion: unknown direction '" + v + "'");
        } else {
            throw ConfigError("collusion: unknown field '" + k + "'");
        }
    }
    return c;
}

ProbeRequestSpec parse_probe(const std::string& value) {
    ProbeRequestSpec p;
    for (const auto& [k, v] : parse_tokens("probe", value)) {
        if (k == "from")
            p.from = static_cast<NodeId>(parse_u64(k, v));
        else if (k == "to")
            p.to = static_cast<NodeId>(parse_u64(k, v));
        else if (k == "at")
            p.at = parse_u64(k, v);
        else if (k == "slack")
            p.slack = static_cast<unsigned>(parse_u64(k, v));
        else
            throw ConfigError("probe: unknown field '" + k + "'");
    }
    return p;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& name) {
    Scenario sc;
    sc.name = name;
    std::vector<std::pair<std::size_t, Location>> pos_lines;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");

        if (key == "seed") sc.seed = parse_u64(key, value);
        else if (key == "nodes") sc.nodes = parse_u64(key, value);
        else if (key == "field_w") sc.field_w = parse_double(key, value);
        else if (key == "field_h") sc.field_h = parse_double(key, value);
        else if (key == "radio_range") sc.radio_range = parse_double(key, value);
        else if (key == "loss_prob") sc.loss_prob = parse_double(key, value);
        else if (key == "collision_window") sc.collision_window = parse_u64(key, value);
        else if (key == "sensing_period") sc.sensing_period = parse_u64(key, value);
        else if (key == "send_jitter") sc.send_jitter = parse_u64(key, value);
        else if (key == "beacon_period") sc.beacon_period = parse_u64(key, value);
        else if (key == "epoch") sc.epoch = parse_u64(key, value);
        else if (key == "run_ticks") sc.run_ticks = parse_u64(key, value);
        else if (key == "replicas") sc.replicas = parse_u64(key, value);
        else if (key == "end_to_end_ack") sc.end_to_end_ack = parse_bool(key, value);
        else if (key == "plain_majority") sc.plain_majority = parse_bool(key, value);
        else if (key == "trace") sc.trace = parse_bool(key, value);
        else if (key == "sink_x") sc.sink_x = parse_double(key, value);
        else if (key == "sink_y") sc.sink_y = parse_double(key, value);
        else if (key == "topology_file") sc.topology_file = value;
        else if (key == "field_value") sc.field_value = parse_double(key, value);
        else if (key == "sense_sigma") sc.sense_sigma = parse_double(key, value);
        else if (key == "sigma_min_frac") sc.sigma_min_frac = parse_double(key, value);
        else if (key == "theta_route") sc.theta_route = parse_double(key, value);
        else if (key == "remote_slack") sc.remote_slack = parse_u64(key, value);
        else if (key == "probe_timeout") sc.probe_timeout = parse_u64(key, value);
        else if (key == "probe_retries") sc.probe_retries = parse_u64(key, value);
        else if (key == "rc5_rounds") sc.rc5_rounds = parse_u64(key, value);
        else if (key == "p_watch") sc.watchdog.p_watch = parse_double(key, value);
        else if (key == "watch_capacity") sc.watchdog.watch_capacity = parse_u64(key, value);
        else if (key == "t_ack") sc.watchdog.t_ack = parse_u64(key, value);
        else if (key == "t_watch") sc.watchdog.t_watch = parse_u64(key, value);
        else if (key == "k_sigma") sc.watchdog.k_sigma = parse_double(key, value);
        else if (key == "m_min_samples") sc.watchdog.m_min_samples = parse_u64(key, value);
        else if (key == "window_epochs") sc.watchdog.window_epochs = parse_u64(key, value);
        else if (key == "delta_traffic") sc.watchdog.delta_traffic = parse_double(key, value);
        else if (key == "theta_pdr") sc.watchdog.theta_pdr = parse_double(key, value);
        else if (key == "pdr_min_packets") sc.watchdog.pdr_min_packets = parse_u64(key, value);
        else if (key == "eps_loc") sc.watchdog.eps_loc = parse_double(key, value);
        else if (key == "expected_tx_per_epoch")
            sc.watchdog.expected_tx_per_epoch = parse_double(key, value);
        else if (key == "w_neg_ack") sc.watchdog.w_neg_ack = parse_double(key, value);
        else if (key == "w_neg_auth") sc.watchdog.w_neg_auth = parse_double(key, value);
        else if (key == "w_neg_data") sc.watchdog.w_neg_data = parse_double(key, value);
        else if (key == "w_neg_traffic") sc.watchdog.w_neg_traffic = parse_double(key, value);
        else if (key == "w_pos_beacon") sc.watchdog.w_pos_beacon = parse_double(key, value);
        else if (key == "theta_trust") sc.trust.theta_trust = parse_double(key, value);
        else if (key == "lambda") sc.trust.lambda = parse_double(key, value);
        else if (key == "vote_window") sc.trust.vote_window = parse_u64(key, value);
        else if (key == "w_ack")
            sc.trust.activity_weight[static_cast<std::size_t>(Rule::Ack)] =
                parse_double(key, value);
        else if (key == "w_auth")
            sc.trust.activity_weight[static_cast<std::size_t>(Rule::Auth)] =
                parse_double(key, value);
        else if (key == "w_data")
            sc.trust.activity_weight[static_cast<std::size_t>(Rule::DataValid)] =
                parse_double(key, value);
        else if (key == "w_traffic")
            sc.trust.activity_weight[static_cast<std::size_t>(Rule::Traffic)] =
                parse_double(key, value);
        else if (key == "w_memory")
            sc.trust.activity_weight[static_cast<std::size_t>(Rule::Memory)] =
                parse_double(key, value);
        else if (key == "w_insitu")
            sc.trust.activity_weight[static_cast<std::size_t>(Rule::Insitu)] =
                parse_double(key, value);
        else if (key == "compromise")
            sc.schedule.entries.push_back(parse_compromise(value));
        else if (key == "fault")
            sc.schedule.entries.push_back(parse_fault(value));
        else if (key == "collusion")
            sc.schedule.collusions.push_back(parse_collusion(value));
        else if (key == "probe")
            sc.probes.push_back(parse_probe(value));
        else if (key == "pos") {
            std::istringstream ps(value);
            std::size_t id;
            double x, y;
            if (!(ps >> id >> x >> y))
                throw ConfigError("pos: expected 'pos = <id> <x> <y>', got '" + value + "'");
            pos_lines.push_back({id, {x, y}});
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }

    if (!pos_lines.empty()) {
        sc.explicit_positions.assign(sc.nodes, Location{});
        std::vector<bool> seen(sc.nodes, false);
        for (const auto& [id, loc] : pos_lines) {
            if (id >= sc.nodes)
                throw ConfigError("pos line references node " + std::to_string(id) +
                                  " outside 0.." + std::to_string(sc.nodes - 1));
            if (seen[id]) throw ConfigError("duplicate pos line for node " + std::to_string(id));
            seen[id] = true;
            sc.explicit_positions[id] = loc;
        }
        for (std::size_t i = 0; i < sc.nodes; ++i)
            if (!seen[i])
                throw ConfigError("pos lines must cover all nodes; node " + std::to_string(i) +
                                  " is missing");
    }

    sc.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string stem = path;
    const auto slash = stem.find_last_of('/');
    if (slash != std::string::npos) stem.erase(0, slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem.erase(dot);
    return parse_scenario(ss.str(), stem);
}

// ---------------------------------------------------------------------------
// presets

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// 50-node jittered grid, sink in the center cell: dense, symmetric-link,
// void-free toward the sink. Keeping the geometry fixed makes the extreme
// case experiments comparable across seeds.
std::string grid50_positions() {
    std::string out;
    out += "pos = 0 125 125\n";
    NodeId id = 1;
    for (int iy = 0; iy < 7; ++iy) {
        for (int ix = 0; ix < 7; ++ix) {
            double x = 26.0 + ix * 33.0;
            double y = 26.0 + iy * 33.0;
            const int c = iy * 7 + ix;
            x += (c * 7) % 5 - 2;
            y += (c * 11) % 5 - 2;
            if (ix == 3 && iy == 3) {
                x = 140.0;  // the center cell hosts the sink; shift this node aside
                y = 141.0;
            }
            out += "pos = " + std::to_string(id) + " " + fmt(x) + " " + fmt(y) + "\n";
            ++id;
        }
    }
    return out;
}

// Corridor around one relay (node 1). The five feeders sit on a 50 m arc
// around the relay, mutually in range: each one routes through the relay and
// overhears every other feeder doing the same, so their evidence streams are
// identical and their trust trajectories cross the threshold together.
// Nodes 7/8 form a detour outside the relay's disk that keeps the network
// routable (and false-positive free) after the relay is walled off.
std::string corridor_positions() {
    std::string out;
    out += "pos = 0 5 60\n";           // sink
    out += "pos = 1 60 60\n";          // the monitored relay
    out += "pos = 2 109.24 51.32\n";   // feeder arc, -10 deg
    out += "pos = 3 109.81 64.36\n";   // +5
    out += "pos = 4 106.98 77.10\n";   // +20
    out += "pos = 5 100.96 88.68\n";   // +35
    out += "pos = 6 92.14 98.30\n";    // +50
    out += "pos = 7 70 125\n";         // detour
    out += "pos = 8 20 115\n";
    return out;
}

std::string common_header(const char* name) {
    std::string s;
    s += "# preset: ";
    s += name;
    s += "\n";
    return s;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"honest-baseline", "blackhole",    "graduated-drop", "bad-mouth",
            "bad-mouth-majority", "false-praise", "jammer",      "byzantine",
            "relocation"};
}

std::string preset_text(const std::string& name) {
    if (name == "honest-baseline") {
        // Extreme case (i): full cooperation on a lossless channel.
        std::string s = common_header("honest-baseline");
        s += "seed = 1\n";
        s += "nodes = 50\n";
        s += "field_w = 250\nfield_h = 250\n";
        s += "radio_range = 60\n";
        s += "loss_prob = 0\ncollision_window = 0\n";
        s += "sensing_period = 2000\nbeacon_period = 5000\nepoch = 10000\n";
        s += "run_ticks = 5000000\n";  // 500 epochs
        s += "send_jitter = 500\n";
        s += "t_ack = 240\n";  // store-and-forward convoys need ack headroom
        s += "sense_sigma = 0\n";
        s += grid50_positions();
        return s;
    }
    if (name == "blackhole") {
        // Extreme case (ii): the corridor relay drops everything from epoch
        // 50 on; all five of its sensor neighbors watch it happen.
        std::string s = common_header("blackhole");
        s += "seed = 1\n";
        s += "nodes = 9\n";
        s += "field_w = 125\nfield_h = 130\n";
        s += "radio_range = 60\n";
        s += "loss_prob = 0\ncollision_window = 0\n";
        s += "sensing_period = 2000\nbeacon_period = 5000\nepoch = 10000\n";
        s += "run_ticks = 1000000\n";  // 100 epochs
        s += "sense_sigma = 0\n";
        s += "p_watch = 1.0\n";
        s += corridor_positions();
        s += "compromise = node=1 at=500000 drop_rate=1.0\n";
        return s;
    }
    if (name == "graduated-drop") {
        std::string s = common_header("graduated-drop");
        s += "seed = 1\n";
        s += "nodes = 9\n";
        s += "field_w = 125\nfield_h = 130\n";
        s += "radio_range = 60\n";
        s += "loss_prob = 0\ncollision_window = 0\n";
        s += "sensing_period = 2000\nbeacon_period = 5000\nepoch = 10000\n";
        s += "run_ticks = 5000000\n";  // 500 epochs
        s += "sense_sigma = 0\n";
        s += "p_watch = 1.0\n";
        s += corridor_positions();
        s += "compromise = node=1 at=500000 drop_rate=1.0\n";
        return s;
    }
    if (name == "bad-mouth" || name == "bad-mouth-majority") {
        const bool majority = name == "bad-mouth-majority";
        std::string s = common_header(name.c_str());
        s += "seed = 1\n";
        s += "nodes = 8\n";
        s += "field_w = 100\nfield_h = 100\n";
        s += "radio_range = 60\n";
        s += "loss_prob = 0\ncollision_window = 0\n";
        s += "sensing_period = 2000\nbeacon_period = 5000\nepoch = 10000\n";
        s += "run_ticks = 600000\n";  // 60 epochs
        s += "plain_majority = true\n";
        s += "sense_sigma = 0\n";
        // A clique around the honest target (node 1): every vote reaches
        // every tallier.
        s += "pos = 0 50 50\n";
        s += "pos = 1 50 62\n";
        s += "pos = 2 62 56\n";
        s += "pos = 3 62 68\n";
        s += "pos = 4 50 74\n";
        s += "pos = 5 38 68\n";
        s += "pos = 6 38 56\n";
        s += "pos = 7 50 38\n";
        const char* colluders = majority ? "2 3 4 5" : "2 3";
        std::istringstream cs(colluders);
        NodeId c;
        while (cs >> c)
            s += "compromise = node=" + std::to_string(c) +
                 " at=50000 collusion_group=1\n";
        s += "collusion = group=1 target=1 direction=badmouth\n";
        return s;
    }
    if (name == "false-praise") {
        // Node 1 blackholes the east-side traffic; nodes 2 and 3 keep-vote
        // for it but stay a minority of its neighborhood.
        std::string s = common_header("false-praise");
        s += "seed = 1\n";
        s += "nodes = 10\n";
        s += "field_w = 180\nfield_h = 100\n";
        s += "radio_range = 60\n";
        s += "loss_prob = 0\ncollision_window = 0\n";
        s += "sensing_period = 2000\nbeacon_period = 5000\nepoch = 10000\n";
        s += "run_ticks = 800000\n";  // 80 epochs
        s += "sense_sigma = 0\n";
        s += "p_watch = 1.0\n";
        s += "pos = 0 30 50\n";   // sink
        s += "pos = 1 85 50\n";   // blackhole relay
        s += "pos = 2 70 42\n";
        s += "pos = 3 70 58\n";
        s += "pos = 4 100 42\n";
        s += "pos = 5 100 58\n";
        s += "pos = 6 85 30\n";
        s += "pos = 7 85 70\n";
        s += "pos = 8 140 50\n";  // upstream reporters
        s += "pos = 9 140 60\n";
        s += "compromise = node=1 at=100000 drop_rate=1.0\n";
        s += "compromise = node=2 at=100000 collusion_group=1\n";
        s += "compromise = node=3 at=100000 collusion_group=1\n";
        s += "collusion = group=1 target=1 direction=falsepraise\n";
        return s;
    }
    if (name == "jammer") {
        std::string s = common_header("jammer");
        s += "seed = 1\n";
        s += "nodes = 6\n";
        s += "field_w = 200\nfield_h = 120\n";
        s += "radio_range = 60\n";
        s += "loss_prob = 0\n";
        s += "collision_window = 24\n";  // overlap losses on: jamming hurts
        s += "sensing_period = 2000\nbeacon_period = 5000\nepoch = 10000\n";
        s += "run_ticks = 400000\n";  // 40 epochs
        s += "end_to_end_ack = true\n";
        s += "sense_sigma = 0\n";
        s += "pos = 0 30 60\n";   // sink
        s += "pos = 1 80 60\n";   // relay in the jammer's range
        s += "pos = 2 80 90\n";
        s += "pos = 3 80 30\n";
        s += "pos = 4 130 60\n";  // far reporter, routes via node 1
        s += "pos = 5 95 95\n";   // jammer
        s += "compromise = node=5 at=50000 jam_rate=0.2\n";
        return s;
    }
    if (name == "byzantine") {
        // Intermittent dropper whose tampered image shows up in its status
        // beacons: the memory-consistency rule zeroes it on first sight.
        std::string s = common_header("byzantine");
        s += "seed = 1\n";
        s += "nodes = 25\n";
        s += "field_w = 180\nfield_h = 180\n";
        s += "radio_range = 60\n";
        s += "loss_prob = 0\ncollision_window = 0\n";
        s += "sensing_period = 2000\nbeacon_period = 5000\nepoch = 10000\n";
        s += "run_ticks = 300000\n";  // 30 epochs
        s += "sense_sigma = 0\n";
        s += "compromise = node=5 at=100000 drop_rate=1.0 byzantine_duty=0.5 code_delta=true\n";
        return s;
    }
    if (name == "relocation") {
        std::string s = common_header("relocation");
        s += "seed = 1\n";
        s += "nodes = 25\n";
        s += "field_w = 180\nfield_h = 180\n";
        s += "radio_range = 60\n";
        s += "loss_prob = 0\ncollision_window = 0\n";
        s += "sensing_period = 2000\nbeacon_period = 5000\nepoch = 10000\n";
        s += "run_ticks = 300000\n";  // 30 epochs
        s += "sense_sigma = 0\n";
        s += "compromise = node=5 at=100000 relocate_dx=10 relocate_dy=0\n";
        return s;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

Scenario preset_scenario(const std::string& name) {
    return parse_scenario(preset_text(name), name);
}

}  // namespace wsn
