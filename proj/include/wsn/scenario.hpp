#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wsn/adversary.hpp"
#include "wsn/topology.hpp"
#include "wsn/trust.hpp"
#include "wsn/types.hpp"
#include "wsn/watchdog.hpp"

namespace wsn {

struct ProbeRequestSpec {
    NodeId from = 0;
    NodeId to = 0;
    SimTime at = 0;
    std::optional<unsigned> slack;
};

// One experiment definition. Node 0 is the sink. Everything here, plus the
// seed, fully determines a run byte for byte.
struct Scenario {
    std::string name = "scenario";
    std::uint64_t seed = 1;
    std::size_t nodes = 25;
    double field_w = 300.0;
    double field_h = 300.0;
    double radio_range = 60.0;
    double loss_prob = 0.0;
    SimTime collision_window = 0;  // 0 = ideal collision-avoidance MAC
    SimTime sensing_period = 2000;
    SimTime send_jitter = 0;  // uniform extra delay per report
    SimTime beacon_period = 5000;
    SimTime epoch = 10000;
    SimTime run_ticks = 200000;
    std::size_t replicas = 1;
    bool end_to_end_ack = false;
    bool plain_majority = false;
    bool trace = false;
    std::optional<double> sink_x;  // default: field center
    std::optional<double> sink_y;
    std::string topology_file;                // optional: node_id,x,y lines
    std::vector<Location> explicit_positions; // optional: pos = id x y lines
    double field_value = 20.0;   // the physical quantity every sensor samples
    double sense_sigma = 0.0;    // honest sensing noise
    double sigma_min_frac = 0.1; // sigma floor as a fraction of sense_sigma
    double theta_route = 0.0;    // 0 = inherit theta_trust
    unsigned remote_slack = 2;
    SimTime probe_timeout = 4000;
    unsigned probe_retries = 0;
    unsigned rc5_rounds = 8;

    WatchdogConfig watchdog;
    TrustConfig trust;
    CompromiseSchedule schedule;
    std::vector<ProbeRequestSpec> probes;

    void validate() const;
    double effective_theta_route() const {
        return theta_route > 0.0 ? theta_route : trust.theta_trust;
    }
    double effective_sigma_min() const { return sigma_min_frac * sense_sigma; }
    double effective_expected_tx() const {
        if (watchdog.expected_tx_per_epoch > 0.0) return watchdog.expected_tx_per_epoch;
        return static_cast<double>(epoch) / static_cast<double>(sensing_period);
    }
};

// Strict flat key-value parser: every unknown key is an error, compromise at
// time zero is rejected, omitted keys take the documented defaults.
Scenario parse_scenario(const std::string& text, const std::string& name);
Scenario load_scenario(const std::string& path);

// Built-in experiment definitions.
std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);
Scenario preset_scenario(const std::string& name);

}  // namespace wsn
