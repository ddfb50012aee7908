#include "wsn/trust.hpp"

#include <algorithm>
#include <set>

namespace wsn {

const char* to_string(Rule r) {
    switch (r) {
        case Rule::Ack: return "ACK";
        case Rule::Auth: return "AUTH";
        case Rule::DataValid: return "DATA_VALID";
        case Rule::Traffic: return "TRAFFIC";
        case Rule::PdrSelf: return "PDR_SELF";
        case Rule::Memory: return "MEMORY";
        case Rule::Insitu: return "INSITU";
    }
    return "?";
}

const char* to_string(Polarity p) {
    switch (p) {
        case Polarity::Positive: return "positive";
        case Polarity::Negative: return "negative";
        case Polarity::DirectZero: return "direct_zero";
    }
    return "?";
}

const char* to_string(TrustStatus s) {
    switch (s) {
        case TrustStatus::Active: return "active";
        case TrustStatus::Suspected: return "suspected";
        case TrustStatus::Isolated: return "isolated";
    }
    return "?";
}

void TrustConfig::validate() const {
    if (theta_trust <= 0.0 || theta_trust >= 1.0)
        throw ConfigError("theta_trust must be in (0,1)");
    if (lambda <= 0.0 || lambda > 1.0) throw ConfigError("lambda must be in (0,1]");
    if (vote_window == 0) throw ConfigError("vote_window must be positive");
    for (double w : activity_weight)
        if (w < 0.0) throw ConfigError("activity weights must be non-negative");
}

Verdict tally_votes(const std::vector<Vote>& votes, NodeId suspect,
                    const std::function<double(NodeId)>& weight_of) {
    double isolate_sum = 0.0;
    double keep_sum = 0.0;
    std::set<NodeId> seen;
    for (const Vote& v : votes) {
        if (v.voter == suspect) continue;
        if (!seen.insert(v.voter).second) continue;  // later duplicate ignored
        const double w = weight_of(v.voter);
        if (v.isolate)
            isolate_sum += w;
        else
            keep_sum += w;
    }
    return isolate_sum > keep_sum ? Verdict::Isolate : Verdict::Keep;
}

unsigned hop_estimate(double dist, double radio_range) {
    if (radio_range <= 0.0) throw ConfigError("radio_range must be positive");
    if (dist <= 0.0) return 0;
    return static_cast<unsigned>(std::ceil(dist / radio_range));
}

ReputationRecord& TrustStore::record(NodeId subject) {
    auto it = records_.find(subject);
    if (it == records_.end()) it = records_.emplace(subject, ReputationRecord{}).first;
    return it->second;
}

const ReputationRecord* TrustStore::find(NodeId subject) const {
    auto it = records_.find(subject);
    return it == records_.end() ? nullptr : &it->second;
}

ApplyResult TrustStore::apply(const RuleEvent& event) {
    ApplyResult result;
    ReputationRecord& rec = record(event.subject);
    if (rec.status == TrustStatus::Isolated) return result;

    switch (event.polarity) {
        case Polarity::DirectZero:
            rec.trust = 0.0;
            rec.status = TrustStatus::Isolated;
            result.applied = true;
            result.newly_isolated = true;
            return result;
        case Polarity::Positive:
            // Below the threshold there is no way back up.
            if (rec.status == TrustStatus::Suspected) return result;
            rec.positive +=
                event.weight * cfg_.activity_weight[static_cast<std::size_t>(event.rule)];
            result.applied = true;
            break;
        case Polarity::Negative:
            rec.negative += event.weight;
            result.applied = true;
            break;
    }
    refresh(rec, result);
    return result;
}

void TrustStore::refresh(ReputationRecord& rec, ApplyResult& result) {
    rec.trust = trust_value(rec.positive, rec.negative);
    if (rec.status == TrustStatus::Active && rec.trust < cfg_.theta_trust) {
        rec.status = TrustStatus::Suspected;
        result.newly_suspected = true;
    }
}

void TrustStore::age_epoch() {
    for (auto& [subject, rec] : records_) {
        if (rec.status != TrustStatus::Active) continue;
        rec.positive *= cfg_.lambda;
        rec.negative *= cfg_.lambda;
        rec.trust = trust_value(rec.positive, rec.negative);
    }
}

void TrustStore::isolate(NodeId subject) {
    ReputationRecord& rec = record(subject);
    if (rec.status == TrustStatus::Isolated) return;
    rec.status = TrustStatus::Isolated;
}

bool TrustStore::is_isolated(NodeId subject) const {
    const ReputationRecord* rec = find(subject);
    return rec != nullptr && rec->status == TrustStatus::Isolated;
}

double TrustStore::trust_of(NodeId subject) const {
    const ReputationRecord* rec = find(subject);
    return rec == nullptr ? 1.0 : rec->trust;
}

TrustStatus TrustStore::status_of(NodeId subject) const {
    const ReputationRecord* rec = find(subject);
    return rec == nullptr ? TrustStatus::Active : rec->status;
}

double TrustStore::vote_weight(NodeId voter) const {
    if (voter == owner_) return 1.0;
    const ReputationRecord* rec = find(voter);
    if (rec != nullptr && rec->status == TrustStatus::Isolated) return 0.0;
    if (cfg_.plain_majority) return 1.0;
    return rec == nullptr ? 1.0 : rec->trust;
}

}  // namespace wsn
