#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "wsn/types.hpp"

namespace wsn {

enum class Rule : std::uint8_t {
    Ack = 0,
    Auth = 1,
    DataValid = 2,
    Traffic = 3,
    PdrSelf = 4,
    Memory = 5,
    Insitu = 6,
};
inline constexpr std::size_t kRuleCount = 7;

const char* to_string(Rule r);

enum class Polarity : std::uint8_t { Positive, Negative, DirectZero };

const char* to_string(Polarity p);

// A single detection outcome emitted by the watchdog into the trust engine.
// Memory-consistency and in-situ violations always carry DirectZero.
struct RuleEvent {
    Rule rule = Rule::Ack;
    NodeId subject = 0;
    Polarity polarity = Polarity::Positive;
    double weight = 1.0;
    SimTime at = 0;
};

enum class TrustStatus : std::uint8_t { Active, Suspected, Isolated };

const char* to_string(TrustStatus s);

// trust = (p+1)/(p+n+1): full trust on zero evidence, converging to the
// beta mean p/(p+n) as evidence accumulates.
inline double trust_value(double p, double n) { return (p + 1.0) / (p + n + 1.0); }

struct ReputationRecord {
    double positive = 0.0;
    double negative = 0.0;
    double trust = 1.0;
    TrustStatus status = TrustStatus::Active;
};

struct TrustConfig {
    double theta_trust = 0.25;  // must stay below 1: a fresh record is trusted
    double lambda = 0.9;        // per-epoch recency aging of both counters
    SimTime vote_window = 2000;
    bool plain_majority = false;
    double activity_weight[kRuleCount] = {1, 1, 1, 1, 1, 1, 1};

    void validate() const;
};

struct Vote {
    NodeId voter = 0;
    NodeId suspect = 0;
    bool isolate = false;
    double trust_claim = 0.0;  // voter's declared trust for the suspect; informational
};

enum class Verdict : std::uint8_t { Keep, Isolate };

// Reputation-weighted majority. Each vote counts with the tallier's own trust
// in the voter (0 for isolated voters); the suspect's own vote and duplicate
// votes (first one wins) are discarded. Isolation is irreversible, so a tie
// keeps the suspect.
Verdict tally_votes(const std::vector<Vote>& votes, NodeId suspect,
                    const std::function<double(NodeId voter)>& weight_of);

// ceil(distance / radio_range): the hop budget baseline for the
// distance-aware remote trust query.
unsigned hop_estimate(double dist, double radio_range);

struct ApplyResult {
    bool applied = false;
    bool newly_suspected = false;
    bool newly_isolated = false;
};

// Per-observer reputation table. Counters mutate exclusively through apply()
// with a locally observed RuleEvent; votes, alerts and remote reports never
// touch them. Records live only for radio neighbors of the owner.
class TrustStore {
public:
    TrustStore() = default;
    TrustStore(NodeId owner, TrustConfig cfg) : owner_(owner), cfg_(cfg) {}

    // First contact starts at full trust: all nodes were deployed by the
    // same trusted entity.
    ReputationRecord& record(NodeId subject);
    const ReputationRecord* find(NodeId subject) const;

    // The only counter mutator. Once a record is suspected, positive
    // evidence no longer accrues and aging stays off (no redemption path);
    // isolated records ignore everything.
    ApplyResult apply(const RuleEvent& event);

    // Epoch-boundary recency aging, active records only.
    void age_epoch();

    void isolate(NodeId subject);
    bool is_isolated(NodeId subject) const;

    // Trust as seen by routing and vote weighting: unknown nodes carry the
    // bootstrap full trust.
    double trust_of(NodeId subject) const;
    TrustStatus status_of(NodeId subject) const;

    double vote_weight(NodeId voter) const;

    const std::map<NodeId, ReputationRecord>& records() const { return records_; }
    const TrustConfig& config() const { return cfg_; }
    NodeId owner() const { return owner_; }

private:
    void refresh(ReputationRecord& rec, ApplyResult& result);

    NodeId owner_ = 0;
    TrustConfig cfg_;
    std::map<NodeId, ReputationRecord> records_;
};

}  // namespace wsn
