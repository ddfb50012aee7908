#include "wsn/adversary.hpp"

#include <cmath>

namespace wsn {

namespace {

void check_rate(double r, const char* name) {
    if (r < 0.0 || r > 1.0)
        throw ConfigError(std::string(name) + " must be in [0,1]");
}

}  // namespace

bool AttackProfile::is_zero() const {
    return drop_rate == 0.0 && delay_ticks == 0 && alter_rate == 0.0 &&
           replay_rate == 0.0 && !sinkhole && jam_rate == 0.0 &&
           data_bias.offset == 0.0 && data_bias.sigma == 0.0 &&
           bogus_query_rate == 0.0 && !relocate_by.has_value() && !code_delta &&
           !collusion_group.has_value();
}

void AttackProfile::validate() const {
    check_rate(drop_rate, "drop_rate");
    check_rate(alter_rate, "alter_rate");
    check_rate(replay_rate, "replay_rate");
    check_rate(jam_rate, "jam_rate");
    check_rate(bogus_query_rate, "bogus_query_rate");
    check_rate(byzantine_duty, "byzantine_duty");
    if (data_bias.sigma < 0.0) throw ConfigError("data_bias sigma must be non-negative");
}

bool FaultProfile::is_zero() const {
    return alter_rate == 0.0 && broadcast_rate == 0.0 && sense_error_sigma == 0.0 &&
           drop_rate == 0.0;
}

void FaultProfile::validate() const {
    check_rate(alter_rate, "fault alter_rate");
    check_rate(broadcast_rate, "fault broadcast_rate");
    check_rate(drop_rate, "fault drop_rate");
    if (sense_error_sigma < 0.0) throw ConfigError("sense_error_sigma must be non-negative");
}

void CompromiseSchedule::validate(std::size_t node_count, NodeId sink) const {
    for (const auto& e : entries) {
        if (e.node >= node_count)
            throw ConfigError("compromise entry references unknown node " +
                              std::to_string(e.node));
        if (e.node == sink)
            throw ConfigError("the sink is trusted infrastructure and cannot be compromised");
        if (e.at == 0)
            throw ConfigError("no compromised or faulty nodes at bootstrap: "
                              "activation time must be > 0");
        if (!e.attack && !e.fault)
            throw ConfigError("compromise entry for node " + std::to_string(e.node) +
                              " has no profile");
        if (e.attack) e.attack->validate();
        if (e.fault) e.fault->validate();
    }
    for (const auto& c : collusions) {
        if (c.target >= node_count)
            throw ConfigError("collusion target " + std::to_string(c.target) +
                              " is not a deployed node");
    }
}

ForwardAction decide_forward(const AttackProfile& p, RandomStream& stream) {
    if (p.drop_rate > 0.0 && stream.chance(p.drop_rate)) return ForwardAction::Drop;
    if (p.alter_rate > 0.0 && stream.chance(p.alter_rate)) return ForwardAction::Alter;
    if (p.delay_ticks > 0) return ForwardAction::Delay;
    if (p.replay_rate > 0.0 && stream.chance(p.replay_rate)) return ForwardAction::Replay;
    return ForwardAction::Forward;
}

ForwardAction decide_forward(const FaultProfile& p, RandomStream& stream) {
    if (p.drop_rate > 0.0 && stream.chance(p.drop_rate)) return ForwardAction::Drop;
    if (p.alter_rate > 0.0 && stream.chance(p.alter_rate)) return ForwardAction::Alter;
    return ForwardAction::Forward;
}

bool byzantine_honest_epoch(double duty, std::uint64_t epoch_index) {
    if (duty <= 0.0) return false;
    if (duty >= 1.0) return true;
    const double e = static_cast<double>(epoch_index);
    return std::floor((e + 1.0) * duty) > std::floor(e * duty);
}

double fabricate_reading(const DataBias& bias, double true_value, RandomStream& stream) {
    double v = true_value + bias.offset;
    if (bias.sigma > 0.0) v += stream.normal(0.0, bias.sigma);
    return v;
}

bool fault_expresses(const FaultProfile& p, std::uint64_t epochs_since_onset,
                     RandomStream& stream) {
    switch (p.pattern) {
        case FaultProfile::Pattern::Persistent: return true;
        case FaultProfile::Pattern::Transient: return epochs_since_onset < p.transient_epochs;
        case FaultProfile::Pattern::Probabilistic: return stream.chance(0.5);
    }
    return true;
}

}  // namespace wsn
