#include "wsn/world.hpp"

#include <algorithm>
#include <cmath>

namespace wsn {

namespace {

constexpr SimTime kSettleMargin = 2000;  // delivery accounting cutoff before run end
constexpr std::size_t kSeenWindow = 32;  // replay dedup depth per node
constexpr std::size_t kWatchDedup = 64;

bool window_has(const std::deque<std::pair<NodeId, std::uint16_t>>& window, NodeId src,
                std::uint16_t seq) {
    for (const auto& [s, q] : window)
        if (s == src && q == seq) return true;
    return false;
}

void window_add(std::deque<std::pair<NodeId, std::uint16_t>>& window, std::size_t cap,
                NodeId src, std::uint16_t seq) {
    if (window.size() >= cap) window.pop_front();
    window.emplace_back(src, seq);
}

}  // namespace

World::World(const Scenario& scenario, std::uint64_t seed)
    : sc_(scenario), seed_(seed), streams_(seed) {
    sc_.validate();
    sc_.trust.plain_majority = sc_.plain_majority;
    sc_.watchdog.sigma_min = sc_.effective_sigma_min();
    sc_.watchdog.expected_tx_per_epoch = sc_.effective_expected_tx();

    topo_ = std::make_unique<Topology>(build_positions(), sc_.radio_range, sc_.field_w,
                                       sc_.field_h);
    channel_ = std::make_unique<Channel>(
        *topo_, queue_, streams_, ChannelModel{sc_.loss_prob, sc_.collision_window},
        [this](NodeId r, const Frame& f) { deliver_frame(r, f); });

    if (sc_.trace) {
        queue_.set_trace(
            [this](SimTime t, std::uint64_t seq, EventKind k, std::uint32_t subj) {
                trace_ += std::to_string(t);
                trace_ += ',';
                trace_ += std::to_string(seq);
                trace_ += ',';
                trace_ += to_string(k);
                trace_ += ',';
                trace_ += std::to_string(subj);
                trace_ += '\n';
            });
    }

    bootstrap_nodes();
    schedule_node_timers();
}

std::vector<Location> World::build_positions() {
    std::vector<Location> positions;
    if (!sc_.explicit_positions.empty()) {
        positions = sc_.explicit_positions;
    } else if (!sc_.topology_file.empty()) {
        positions = Topology::load_positions(sc_.topology_file);
        if (positions.size() != sc_.nodes)
            throw ConfigError("topology file holds " + std::to_string(positions.size()) +
                              " nodes, scenario declares " + std::to_string(sc_.nodes));
    } else {
        positions = place_uniform(sc_.nodes, sc_.field_w, sc_.field_h,
                                  streams_.stream_for("deploy"));
        positions[0] = {sc_.field_w / 2.0, sc_.field_h / 2.0};  // sink at the center
    }
    if (sc_.sink_x && sc_.sink_y) positions[0] = {*sc_.sink_x, *sc_.sink_y};
    return positions;
}

std::uint32_t World::honest_digest(NodeId id) const {
    // Stand-in for the code image hash; constant per node unless tampered.
    return 0xC0DE0000u ^ (static_cast<std::uint32_t>(id) * 2654435761u);
}

void World::bootstrap_nodes() {
    auto& key_stream = streams_.stream_for("keys");
    nodes_.resize(sc_.nodes);
    for (NodeId id = 0; id < sc_.nodes; ++id) {
        NodeState& n = nodes_[id];
        n.id = id;
        n.loc = topo_->position(id);
        for (auto& b : n.key) b = static_cast<std::uint8_t>(key_stream.next_u64());
        n.ek = expand_key(n.key, sc_.rc5_rounds);
        n.code_digest = honest_digest(id);
        n.watch = WatchBuffer(sc_.watchdog.watch_capacity);
        n.trust = TrustStore(id, sc_.trust);
        n.known_loc[0] = topo_->position(0);
    }
    // Pairwise verification table: every node can check its radio neighbors'
    // MACs and knows their deployment-time locations. The sink, as the shared
    // key endpoint, can open traffic from any origin.
    for (NodeId id = 0; id < sc_.nodes; ++id) {
        NodeState& n = nodes_[id];
        for (NodeId nb : topo_->neighbors(id)) {
            n.neighbor_keys[nb] = nodes_[nb].ek;
            n.known_loc[nb] = topo_->position(nb);
        }
    }
    for (NodeId id = 1; id < sc_.nodes; ++id) nodes_[0].neighbor_keys[id] = nodes_[id].ek;

    for (std::size_t i = 0; i < sc_.schedule.entries.size(); ++i) {
        const CompromiseEntry& e = sc_.schedule.entries[i];
        NodeState& n = nodes_[e.node];
        n.attack = e.attack;
        n.fault = e.fault;
        n.activation_at = e.at;
        if (e.attack && e.attack->collusion_group) {
            for (const CollusionSpec& c : sc_.schedule.collusions)
                if (c.group == *e.attack->collusion_group) n.collusion = c;
        }
        // Lazy activation: only physical side effects need an event, so a
        // zero profile leaves the event stream untouched.
        if (e.attack && (e.attack->relocate_by || e.attack->jam_rate > 0.0))
            queue_.schedule(e.at, EventKind::Activation, e.node, [this, i] { activation(i); });
    }
    for (const ProbeRequestSpec& p : sc_.probes)
        queue_.schedule(p.at, EventKind::ProbeTimeout, p.from, [this, p] { issue_probe(p); });
}

void World::schedule_node_timers() {
    // Reporting slots are staggered deterministically across the period, the
    // way deployed networks desynchronize periodic traffic: two upstream
    // senders of one relay then never burst inside a single ack turnaround.
    for (NodeId id = 0; id < sc_.nodes; ++id) {
        if (id != 0) {
            const SimTime phase = 1 + (id * sc_.sensing_period) / sc_.nodes;
            queue_.schedule(phase, EventKind::SensingTick, id,
                            [this, id, phase] { sensing_tick(id, phase); });
        }
        const SimTime bphase =
            1 + ((2 * id + 1) * sc_.beacon_period) / (2 * sc_.nodes);
        queue_.schedule(bphase, EventKind::BeaconTick, id, [this, id] { beacon_tick(id); });
    }
    queue_.schedule(sc_.epoch, EventKind::EpochTick, 0, [this] { epoch_tick(); });
}

void World::run() { run_until(sc_.run_ticks); }

void World::run_until(SimTime t) { queue_.run_until(t); }

// ---------------------------------------------------------------------------
// adversary phases

bool World::attack_misbehaving(const NodeState& n) const {
    if (!n.attack || queue_.now() < n.activation_at) return false;
    if (n.attack->is_zero()) return false;
    if (n.attack->byzantine_duty <= 0.0) return true;
    const std::uint64_t e = queue_.now() / sc_.epoch - n.activation_at / sc_.epoch;
    return !byzantine_honest_epoch(n.attack->byzantine_duty, e);
}

bool World::fault_active_now(NodeState& n) {
    if (!n.fault || queue_.now() < n.activation_at) return false;
    if (n.fault->is_zero()) return false;
    const std::uint64_t cur = queue_.now() / sc_.epoch;
    const std::uint64_t since = cur - n.activation_at / sc_.epoch;
    switch (n.fault->pattern) {
        case FaultProfile::Pattern::Persistent:
            return true;
        case FaultProfile::Pattern::Transient:
            return since < n.fault->transient_epochs;
        case FaultProfile::Pattern::Probabilistic:
            if (n.fault_phase_epoch != cur) {
                n.fault_phase_epoch = cur;
                n.fault_phase = streams_.node_stream(n.id).chance(0.5);
            }
            return n.fault_phase;
    }
    return false;
}

void World::activation(std::size_t entry_idx) {
    const CompromiseEntry& e = sc_.schedule.entries[entry_idx];
    NodeState& n = nodes_[e.node];
    if (e.attack && e.attack->relocate_by) {
        Location to{n.loc.x + e.attack->relocate_by->dx,
                    n.loc.y + e.attack->relocate_by->dy};
        topo_->move(n.id, to);
        n.loc = to;
    }
    if (e.attack && e.attack->jam_rate > 0.0)
        queue_.schedule(queue_.now() + 1, EventKind::JamTick, n.id,
                        [this, id = n.id] { jam_tick(id); });
}

void World::jam_tick(NodeId id) {
    NodeState& n = nodes_[id];
    if (!n.attack || n.attack->jam_rate <= 0.0) return;
    Frame noise;
    noise.noise = true;
    noise.bytes.assign(kMaxWireBytes, 0);
    bytes_total_ += noise.bytes.size();
    channel_->transmit(id, std::move(noise));
    const double p = n.attack->jam_rate;
    SimTime gap = 1;
    if (p < 1.0) {
        const double u = streams_.node_stream(id).uniform();
        gap = 1 + static_cast<SimTime>(std::floor(std::log(1.0 - u) / std::log(1.0 - p)));
    }
    queue_.schedule(queue_.now() + gap, EventKind::JamTick, id, [this, id] { jam_tick(id); });
}

void World::colluder_epoch(NodeState& n) {
    if (!n.collusion || !n.attack || queue_.now() < n.activation_at) return;
    if (n.collusion->direction != CollusionSpec::Direction::BadMouth) return;
    const NodeId target = n.collusion->target;
    if (target == n.id || !topo_->are_neighbors(n.id, target)) return;
    if (n.trust.is_isolated(target)) return;
    broadcast_alert(n, target, Rule::Ack);  // fabricated accusation
    ++alerts_;
    open_round(n, target);
}

// ---------------------------------------------------------------------------
// transmit path

Packet World::build_packet(NodeState& n, NodeId dst, HandlerId handler, std::uint16_t seq,
                           NodeId src, std::span<const std::uint8_t> plain) {
    Packet p;
    p.header.src = src;
    p.header.dst = dst;
    p.header.handler = handler;
    p.header.seq = seq;
    p.header.payload_len = static_cast<std::uint8_t>(plain.size());
    Sealed s = seal(n.ek, src, seq, static_cast<std::uint8_t>(handler), plain);
    p.payload = std::move(s.payload);
    p.mac = s.mac;
    return p;
}

void World::transmit(NodeState& n, Packet pkt, bool priority) {
    std::vector<std::uint8_t> wire = encode(pkt);
    // A faulty radio corrupts frames after they were MACed; the next hop's
    // verification catches exactly this.
    if (n.fault && n.fault->alter_rate > 0.0 && fault_active_now(n) &&
        streams_.node_stream(n.id).chance(n.fault->alter_rate)) {
        auto& st = streams_.node_stream(n.id);
        const std::size_t byte = st.uniform_int(kHeaderBytes, wire.size() - 1);
        const std::size_t bit = st.uniform_int(0, 7);
        wire[byte] ^= static_cast<std::uint8_t>(1u << bit);
    }
    bytes_total_ += wire.size();
    switch (pkt.header.handler) {
        case HandlerId::Alert:
        case HandlerId::Vote:
        case HandlerId::Beacon:
        case HandlerId::TrustProbe:
            bytes_control_ += wire.size();
            break;
        default:
            break;
    }
    Frame f;
    f.bytes = std::move(wire);
    channel_->transmit(n.id, std::move(f), priority);
}

// ---------------------------------------------------------------------------
// periodic behaviors

double sense_noise(const Scenario& sc, RandomStream& st) {
    return sc.sense_sigma > 0.0 ? st.normal(0.0, sc.sense_sigma) : 0.0;
}

void World::sensing_tick(NodeId id, SimTime nominal) {
    // The next report keeps its nominal slot; the jitter decorrelates relay
    // queues so periodic flows cannot starve one hub every single epoch.
    const SimTime next = nominal + sc_.sensing_period;
    SimTime fire = next;
    if (sc_.send_jitter > 0)
        fire += streams_.node_stream(id).uniform_int(0, sc_.send_jitter);
    queue_.schedule(fire, EventKind::SensingTick, id,
                    [this, id, next] { sensing_tick(id, next); });
    NodeState& n = nodes_[id];
    auto& st = streams_.node_stream(id);

    double value = sc_.field_value + sense_noise(sc_, st);
    const bool attacking = attack_misbehaving(n);
    if (attacking &&
        (n.attack->data_bias.offset != 0.0 || n.attack->data_bias.sigma != 0.0))
        value = fabricate_reading(n.attack->data_bias, value, st);
    if (fault_active_now(n) && n.fault->sense_error_sigma > 0.0)
        value += st.normal(0.0, n.fault->sense_error_sigma);

    send_report(n, value);

    if (attacking && n.attack->bogus_query_rate > 0.0 &&
        st.chance(n.attack->bogus_query_rate)) {
        const auto& nbs = topo_->neighbors(id);
        if (!nbs.empty()) {
            const NodeId target = nbs[st.uniform_int(0, nbs.size() - 1)];
            std::uint8_t junk[4];
            for (auto& b : junk) b = static_cast<std::uint8_t>(st.next_u64());
            Packet q = build_packet(n, target, HandlerId::Query, n.next_seq++, n.id, junk);
            transmit(n, std::move(q));
        }
    }
    if (fault_active_now(n) && n.fault->broadcast_rate > 0.0 &&
        st.chance(n.fault->broadcast_rate)) {
        std::uint8_t junk[kMaxPayload];
        for (auto& b : junk) b = static_cast<std::uint8_t>(st.next_u64());
        Packet j = build_packet(n, kBroadcastId, HandlerId::Data, n.next_seq++, n.id, junk);
        transmit(n, std::move(j));
    }
}

void World::send_report(NodeState& n, double value) {
    ReadingPayload r;
    double milli = std::round(value * 1000.0);
    milli = std::clamp(milli, -2147483648.0, 2147483647.0);
    r.value_milli = static_cast<std::int32_t>(milli);
    r.origin_x_dm = to_dm(n.loc.x);
    r.origin_y_dm = to_dm(n.loc.y);
    r.sensed_at = static_cast<std::uint16_t>(queue_.now() & 0xFFFF);
    r.origin = n.id;
    std::vector<std::uint8_t> plain = r.to_bytes();
    const auto tag = e2e_tag(n.ek, plain);
    plain.push_back(tag[0]);
    plain.push_back(tag[1]);

    const auto hop = route_toward(n, n.known_loc.at(0), sc_.effective_theta_route());
    if (!hop) {
        ++routing_failures_;
        return;
    }
    const std::uint16_t seq = n.next_seq++;
    Packet pkt = build_packet(n, *hop, HandlerId::Data, seq, n.id, plain);

    ++originated_;
    if (queue_.now() + kSettleMargin <= sc_.run_ticks) {
        settled_data_.insert({n.id, seq});
        ++originated_settled_;
    }
    if (sc_.end_to_end_ack) {
        const std::uint64_t cohort = queue_.now() / sc_.epoch;
        n.data_sent_epoch[seq] = cohort;
        n.pdr_cohorts[cohort].first++;
    }

    const EventHandle timeout =
        queue_.schedule(queue_.now() + sc_.watchdog.t_ack, EventKind::AckTimeout, n.id,
                        [this, id = n.id, seq] { ack_timeout(id, id, seq); });
    n.pending_acks[{n.id, seq}] = PendingAck{*hop, timeout};
    if (*hop != sink() && sc_.watchdog.p_watch > 0.0 &&
        streams_.node_stream(n.id).chance(sc_.watchdog.p_watch)) {
        n.watch.add({n.id, seq, *hop, queue_.now() + sc_.watchdog.t_ack, true, false});
    }
    transmit(n, std::move(pkt));
}

void World::beacon_tick(NodeId id) {
    queue_.schedule(queue_.now() + sc_.beacon_period, EventKind::BeaconTick, id,
                    [this, id] { beacon_tick(id); });
    NodeState& n = nodes_[id];
    const bool active = (n.attack || n.fault) && queue_.now() >= n.activation_at;

    BeaconPayload b;
    Location reported = n.loc;
    if (active && n.attack && n.attack->sinkhole) {
        // Claim a spot one meter from the sink, pulled slightly toward the
        // real position so every victim computes a distinct best hop.
        const Location s = n.known_loc.at(0);
        const double d = std::max(distance(n.loc, s), 1e-9);
        reported = {s.x + (n.loc.x - s.x) / d, s.y + (n.loc.y - s.y) / d};
    }
    b.x_dm = to_dm(reported.x);
    b.y_dm = to_dm(reported.y);
    b.code_digest = (active && n.attack && n.attack->code_delta)
                        ? (n.code_digest ^ 0xDEAD50C1u)
                        : n.code_digest;
    b.pdr_milli = static_cast<std::uint16_t>(std::lround(n.last_pdr * 1000.0));

    Packet pkt =
        build_packet(n, kBroadcastId, HandlerId::Beacon, n.next_seq++, n.id, b.to_bytes());
    transmit(n, std::move(pkt));
}

void World::epoch_tick() {
    queue_.schedule(queue_.now() + sc_.epoch, EventKind::EpochTick, 0,
                    [this] { epoch_tick(); });

    for (NodeId id = 1; id < sc_.nodes; ++id) {
        NodeState& n = nodes_[id];
        // Recency aging first, then the epoch-granular judgments.
        n.trust.age_epoch();

        for (auto& [nb, o] : n.obs) {
            if (o.reading_ok_this_epoch && !o.reading_flagged_this_epoch)
                emit_rule_event(id, {Rule::DataValid, nb, Polarity::Positive, 1.0,
                                     queue_.now()});
            o.reading_ok_this_epoch = false;
            o.reading_flagged_this_epoch = false;

            const double observed = o.tx_originated_this_epoch;
            if (traffic_within_band(observed, sc_.watchdog.expected_tx_per_epoch,
                                    sc_.watchdog.delta_traffic))
                emit_rule_event(id, {Rule::Traffic, nb, Polarity::Positive, 1.0,
                                     queue_.now()});
            else
                emit_rule_event(id, {Rule::Traffic, nb, Polarity::Negative,
                                     sc_.watchdog.w_neg_traffic, queue_.now()});
            o.tx_history.push_back(o.tx_originated_this_epoch);
            if (o.tx_history.size() > sc_.watchdog.window_epochs) o.tx_history.pop_front();
            o.tx_originated_this_epoch = 0;

            while (!o.readings.empty() &&
                   o.readings.front().epoch + sc_.watchdog.window_epochs <= epoch_index_)
                o.readings.pop_front();
        }

        // Packet-delivery rule: self-evaluation over the cohort that had a
        // full epoch to collect end-to-end acks. Never blames a neighbor.
        if (sc_.end_to_end_ack && id != sink() && epoch_index_ >= 1) {
            const std::uint64_t cohort = epoch_index_ - 1;
            auto it = n.pdr_cohorts.find(cohort);
            if (it != n.pdr_cohorts.end() &&
                it->second.first >= sc_.watchdog.pdr_min_packets) {
                const double pdr =
                    static_cast<double>(it->second.second) / it->second.first;
                n.last_pdr = pdr;
                if (pdr < sc_.watchdog.theta_pdr) {
                    ++jam_alarms_;
                    rule_rows_.push_back({queue_.now(), id, id, Rule::PdrSelf,
                                          Polarity::Negative, 0.0});
                    AlertPayload a{AlertKind::JamSuspected, id, 0};
                    Packet alarm = build_packet(n, kBroadcastId, HandlerId::Alert,
                                                n.next_seq++, id, a.to_bytes());
                    transmit(n, std::move(alarm));
                    if (const auto hop =
                            route_toward(n, n.known_loc.at(0), sc_.effective_theta_route());
                        hop && *hop != id) {
                        Packet to_sink = build_packet(n, *hop, HandlerId::Alert,
                                                      n.next_seq++, id, a.to_bytes());
                        transmit(n, std::move(to_sink));
                    }
                }
            }
            while (!n.pdr_cohorts.empty() && n.pdr_cohorts.begin()->first + 2 < epoch_index_)
                n.pdr_cohorts.erase(n.pdr_cohorts.begin());
            for (auto dit = n.data_sent_epoch.begin(); dit != n.data_sent_epoch.end();) {
                if (dit->second + 2 < epoch_index_)
                    dit = n.data_sent_epoch.erase(dit);
                else
                    ++dit;
            }
        }

        colluder_epoch(n);
    }

    ++epoch_index_;
    snapshot_trajectories();
}

void World::snapshot_trajectories() {
    for (NodeId id = 0; id < sc_.nodes; ++id) {
        for (const auto& [subject, rec] : nodes_[id].trust.records()) {
            trajectories_.push_back({epoch_index_, id, subject, rec.positive, rec.negative,
                                     rec.trust, rec.status});
        }
    }
}

// ---------------------------------------------------------------------------
// receive path

void World::deliver_frame(NodeId receiver, const Frame& frame) {
    NodeState& n = nodes_[receiver];
    // An isolated node's frames are ignored wholesale: no processing, no
    // rule evidence.
    if (n.trust.is_isolated(frame.transmitter)) return;

    auto decoded = decode(frame.bytes);
    if (!decoded) {
        ++codec_errors_;
        return;
    }
    const Packet& pkt = *decoded;
    const NodeId tx = frame.transmitter;

    // Unknown radios cannot be authenticated; their frames are dropped.
    auto key_it = n.neighbor_keys.find(tx);
    if (key_it == n.neighbor_keys.end()) return;

    // Hop-wise authentication: every frame a neighbor transmits must carry a
    // tag under that neighbor's key.
    const Mac8 expect = packet_mac(key_it->second, pkt.payload,
                                   static_cast<std::uint8_t>(pkt.header.handler),
                                   pkt.header.seq, pkt.header.src);
    if (expect != pkt.mac) {
        ++auth_hop_;
        emit_rule_event(receiver, {Rule::Auth, tx, Polarity::Negative,
                                   sc_.watchdog.w_neg_auth, queue_.now()});
        return;
    }

    overhear_hooks(n, pkt, tx);

    if (pkt.header.dst != receiver && pkt.header.dst != kBroadcastId) return;

    switch (pkt.header.handler) {
        case HandlerId::Data: handle_data(n, pkt, tx); break;
        case HandlerId::Ack: handle_ack(n, pkt, tx); break;
        case HandlerId::Beacon: handle_beacon(n, pkt, tx); break;
        case HandlerId::Alert: handle_alert(n, pkt, tx); break;
        case HandlerId::Vote: handle_vote(n, pkt, tx); break;
        case HandlerId::TrustProbe: handle_probe(n, pkt, tx); break;
        case HandlerId::Query: break;            // counted by the traffic rule
        case HandlerId::IsolationNotice: break;  // informational broadcast
    }
}

void World::overhear_hooks(NodeState& n, const Packet& pkt, NodeId tx) {
    if (n.id == sink()) return;  // the base station keeps no peer observations
    const NodeId src = pkt.header.src;
    const std::uint16_t seq = pkt.header.seq;

    if (pkt.header.handler == HandlerId::Data) {
        // Forwarding check: does this transmission discharge a watched relay?
        if (WatchEntry* e = n.watch.match(src, seq, tx)) {
            if (e->own_send) {
                e->forward_seen = true;
            } else {
                n.obs[tx].forwarded++;
                emit_rule_event(n.id, {Rule::Ack, tx, Polarity::Positive, 1.0, queue_.now()});
                n.watch.drop(src, seq, tx);
            }
        }
    }

    // Traffic awareness counts what a neighbor originates itself.
    if (src == tx &&
        (pkt.header.handler == HandlerId::Data || pkt.header.handler == HandlerId::Query))
        n.obs[tx].tx_originated_this_epoch++;

    // Data validation: readings are judged at every overhearer that shares a
    // key with the origin. The inner end-to-end tag keeps in-flight
    // tampering from being blamed on the origin.
    if (pkt.header.handler == HandlerId::Data && src != n.id &&
        pkt.header.payload_len == kMaxPayload && topo_->are_neighbors(n.id, src)) {
        auto okey = n.neighbor_keys.find(src);
        if (okey != n.neighbor_keys.end()) {
            NeighborObservation& o = n.obs[src];
            if (!o.last_reading_seq || *o.last_reading_seq != seq) {
                o.last_reading_seq = seq;
                const auto plain = ofb_crypt(okey->second, make_iv(src, seq), pkt.payload);
                const auto reading_bytes = std::span(plain).first(12);
                const auto tag = e2e_tag(okey->second, reading_bytes);
                if (tag[0] == plain[12] && tag[1] == plain[13]) {
                    if (auto r = ReadingPayload::from_bytes(plain)) {
                        const double value = r->value_milli / 1000.0;
                        std::vector<double> others;
                        for (const auto& [nb, ob] : n.obs) {
                            if (nb == src || ob.readings.empty()) continue;
                            others.push_back(ob.readings.back().value);
                        }
                        o.readings.push_back({epoch_index_, value});
                        const auto verdict = judge_reading(
                            value, others, sc_.watchdog.m_min_samples,
                            sc_.watchdog.k_sigma, sc_.watchdog.sigma_min);
                        if (verdict.has_value()) {
                            if (*verdict) {
                                o.reading_ok_this_epoch = true;
                            } else {
                                o.reading_flagged_this_epoch = true;
                                emit_rule_event(n.id, {Rule::DataValid, src,
                                                       Polarity::Negative,
                                                       sc_.watchdog.w_neg_data,
                                                       queue_.now()});
                            }
                        }
                    }
                }
            }
        }
    }

    // Third-party promiscuous watch: a unicast data packet handed to one of
    // my neighbors should reappear within the ack window.
    if (pkt.header.handler == HandlerId::Data && pkt.header.dst != n.id &&
        pkt.header.dst != kBroadcastId && pkt.header.dst != sink() &&
        topo_->are_neighbors(n.id, pkt.header.dst) && !window_has(n.watch_dedup, src, seq)) {
        if (sc_.watchdog.p_watch > 0.0 &&
            streams_.node_stream(n.id).chance(sc_.watchdog.p_watch)) {
            // Busy relays push forwards behind their priority acks, so the
            // third-party deadline is roomier than the sender's ack timer.
            // The sweep runs one tick after the deadline: a forward landing
            // exactly on it still counts.
            const SimTime deadline = queue_.now() + sc_.watchdog.effective_t_watch();
            window_add(n.watch_dedup, kWatchDedup, src, seq);
            n.watch.add({src, seq, pkt.header.dst, deadline, false, false});
            queue_.schedule(deadline + 1, EventKind::WatchTimeout, n.id,
                            [this, id = n.id] { watch_sweep(id); });
        }
    }
}

void World::handle_data(NodeState& n, const Packet& pkt, NodeId tx) {
    if (pkt.header.dst == kBroadcastId) return;  // junk broadcast, traffic rule covers it

    const NodeId src = pkt.header.src;
    const std::uint16_t seq = pkt.header.seq;

    if (window_has(n.seen_window, src, seq)) {
        // Replay defense: a duplicate inside the seen-window indicts the
        // node that transmitted it, not the nominal origin.
        ++replays_;
        emit_rule_event(n.id, {Rule::Traffic, tx, Polarity::Negative,
                               sc_.watchdog.w_neg_traffic, queue_.now()});
        return;
    }
    window_add(n.seen_window, kSeenWindow, src, seq);

    if (n.id == sink()) {
        send_hop_ack(n, tx, src, seq);
        auto okey = n.neighbor_keys.find(src);
        if (okey == n.neighbor_keys.end() || pkt.header.payload_len != kMaxPayload) {
            ++auth_e2e_;
            return;
        }
        const auto plain = ofb_crypt(okey->second, make_iv(src, seq), pkt.payload);
        const auto tag = e2e_tag(okey->second, std::span(plain).first(12));
        if (tag[0] != plain[12] || tag[1] != plain[13]) {
            // End-to-end failure: logged, never attributed to a neighbor.
            ++auth_e2e_;
            return;
        }
        ++delivered_;
        if (settled_data_.count({src, seq})) ++delivered_settled_;
        if (sc_.end_to_end_ack) {
            auto r = ReadingPayload::from_bytes(plain);
            AckPayload ack;
            ack.orig_src = src;
            ack.orig_seq = seq;
            ack.kind = AckKind::EndToEnd;
            ack.target_x_dm = r ? r->origin_x_dm : 0;
            ack.target_y_dm = r ? r->origin_y_dm : 0;
            relay_e2e_ack(n, ack);
        }
        return;
    }

    // Relay path. Misbehavior hooks in here: a dropper neither acks nor
    // forwards, everything else acknowledges receipt first.
    ForwardAction action = ForwardAction::Forward;
    if (attack_misbehaving(n)) {
        action = decide_forward(*n.attack, streams_.node_stream(n.id));
    } else if (fault_active_now(n) && n.fault->drop_rate > 0.0 &&
               streams_.node_stream(n.id).chance(n.fault->drop_rate)) {
        action = ForwardAction::Drop;
    }
    if (action == ForwardAction::Drop) return;

    send_hop_ack(n, tx, src, seq);

    Packet fwd = pkt;
    if (action == ForwardAction::Alter) {
        // Compromised nodes keep their keys: the altered payload is re-MACed
        // and survives every hop check; only the sink's end-to-end tag can
        // tell.
        auto& st = streams_.node_stream(n.id);
        if (!fwd.payload.empty()) {
            const std::size_t byte = st.uniform_int(0, fwd.payload.size() - 1);
            fwd.payload[byte] ^= static_cast<std::uint8_t>(1u << st.uniform_int(0, 7));
        }
    }

    if (action == ForwardAction::Delay) {
        const SimTime d = n.attack->delay_ticks;
        queue_.schedule(queue_.now() + d, EventKind::TransmissionStart, n.id,
                        [this, id = n.id, fwd] {
                            relay_data(nodes_[id], fwd, true);
                        });
        return;
    }

    relay_data(n, fwd, true);

    if (action == ForwardAction::Replay) {
        auto& st = streams_.node_stream(n.id);
        const SimTime gap = 100 + st.uniform_int(0, 400);
        queue_.schedule(queue_.now() + gap, EventKind::TransmissionStart, n.id,
                        [this, id = n.id, fwd] {
                            relay_data(nodes_[id], fwd, false);
                        });
    }
}

void World::relay_data(NodeState& n, Packet pkt, bool track) {
    const auto hop = route_toward(n, n.known_loc.at(0), sc_.effective_theta_route());
    if (!hop) {
        ++routing_failures_;
        return;
    }
    pkt.header.dst = *hop;
    pkt.mac = packet_mac(n.ek, pkt.payload, static_cast<std::uint8_t>(pkt.header.handler),
                         pkt.header.seq, pkt.header.src);
    if (track) {
        const NodeId origin = pkt.header.src;
        const std::uint16_t seq = pkt.header.seq;
        const EventHandle timeout = queue_.schedule(
            queue_.now() + sc_.watchdog.t_ack, EventKind::AckTimeout, n.id,
            [this, id = n.id, origin, seq] { ack_timeout(id, origin, seq); });
        n.pending_acks[{origin, seq}] = PendingAck{*hop, timeout};
        if (*hop != sink() && sc_.watchdog.p_watch > 0.0 &&
            streams_.node_stream(n.id).chance(sc_.watchdog.p_watch))
            n.watch.add({origin, seq, *hop, queue_.now() + sc_.watchdog.t_ack, true, false});
    }
    transmit(n, std::move(pkt));
}

void World::send_hop_ack(NodeState& n, NodeId to, NodeId orig_src, std::uint16_t orig_seq) {
    AckPayload a;
    a.orig_src = orig_src;
    a.orig_seq = orig_seq;
    a.kind = AckKind::HopWise;
    Packet pkt = build_packet(n, to, HandlerId::Ack, n.next_seq++, n.id, a.to_bytes());
    transmit(n, std::move(pkt), true);  // turnaround priority on the radio
}

void World::handle_ack(NodeState& n, const Packet& pkt, NodeId tx) {
    if (pkt.header.src != tx) return;  // acks are always single-hop authored
    const auto plain = open(n.neighbor_keys.at(tx), pkt.header.src, pkt.header.seq,
                            static_cast<std::uint8_t>(HandlerId::Ack), pkt.payload, pkt.mac);
    if (!plain) return;
    const auto ack = AckPayload::from_bytes(*plain);
    if (!ack) return;

    if (ack->kind == AckKind::HopWise) {
        auto it = n.pending_acks.find({ack->orig_src, ack->orig_seq});
        if (it == n.pending_acks.end() || it->second.hop != tx) return;
        queue_.cancel(it->second.timeout);
        n.pending_acks.erase(it);
        n.watch.drop(ack->orig_src, ack->orig_seq, tx);
        emit_rule_event(n.id, {Rule::Ack, tx, Polarity::Positive, 1.0, queue_.now()});
        return;
    }

    // End-to-end ack: consume at the origin, otherwise relay toward it.
    if (ack->orig_src == n.id) {
        auto it = n.data_sent_epoch.find(ack->orig_seq);
        if (it != n.data_sent_epoch.end()) {
            n.pdr_cohorts[it->second].second++;
            n.data_sent_epoch.erase(it);
        }
        return;
    }
    if (attack_misbehaving(n) && n.attack->drop_rate > 0.0 &&
        streams_.node_stream(n.id).chance(n.attack->drop_rate))
        return;
    if (fault_active_now(n) && n.fault->drop_rate > 0.0 &&
        streams_.node_stream(n.id).chance(n.fault->drop_rate))
        return;
    relay_e2e_ack(n, *ack);
}

void World::relay_e2e_ack(NodeState& n, const AckPayload& ack) {
    const Location target{from_dm(ack.target_x_dm), from_dm(ack.target_y_dm)};
    std::optional<NodeId> hop;
    if (topo_->are_neighbors(n.id, ack.orig_src) &&
        !n.trust.is_isolated(ack.orig_src))
        hop = ack.orig_src;
    else
        hop = route_toward(n, target, sc_.effective_theta_route());
    if (!hop) {
        ++routing_failures_;
        return;
    }
    Packet pkt = build_packet(n, *hop, HandlerId::Ack, n.next_seq++, n.id, ack.to_bytes());
    transmit(n, std::move(pkt));
}

void World::handle_beacon(NodeState& n, const Packet& pkt, NodeId tx) {
    if (pkt.header.src != tx) return;
    const auto plain = open(n.neighbor_keys.at(tx), pkt.header.src, pkt.header.seq,
                            static_cast<std::uint8_t>(HandlerId::Beacon), pkt.payload,
                            pkt.mac);
    if (!plain) return;
    const auto beacon = BeaconPayload::from_bytes(*plain);
    if (!beacon) return;

    if (n.id == sink()) {
        // Trusted endpoint: beacons only refresh its routing location cache.
        n.known_loc[tx] = {from_dm(beacon->x_dm), from_dm(beacon->y_dm)};
        return;
    }

    NeighborObservation& o = n.obs[tx];
    if (!o.last_beacon) {
        o.last_beacon = *beacon;
        n.known_loc[tx] = {from_dm(beacon->x_dm), from_dm(beacon->y_dm)};
        return;
    }
    switch (check_beacon(*o.last_beacon, *beacon, sc_.watchdog.eps_loc)) {
        case BeaconJudgment::Consistent:
            o.last_beacon = *beacon;
            n.known_loc[tx] = {from_dm(beacon->x_dm), from_dm(beacon->y_dm)};
            emit_rule_event(n.id, {Rule::Memory, tx, Polarity::Positive,
                                   sc_.watchdog.w_pos_beacon, queue_.now()});
            break;
        case BeaconJudgment::MemoryViolation:
            emit_rule_event(n.id,
                            {Rule::Memory, tx, Polarity::DirectZero, 1.0, queue_.now()});
            break;
        case BeaconJudgment::LocationViolation:
            emit_rule_event(n.id,
                            {Rule::Insitu, tx, Polarity::DirectZero, 1.0, queue_.now()});
            break;
    }
}

void World::handle_alert(NodeState& n, const Packet& pkt, NodeId tx) {
    if (pkt.header.src != tx) return;
    const auto plain = open(n.neighbor_keys.at(tx), pkt.header.src, pkt.header.seq,
                            static_cast<std::uint8_t>(HandlerId::Alert), pkt.payload,
                            pkt.mac);
    if (!plain) return;
    const auto alert = AlertPayload::from_bytes(*plain);
    if (!alert) return;

    if (alert->kind == AlertKind::JamSuspected) {
        // Forward the routed copy toward the sink; the broadcast leg stops here.
        if (pkt.header.dst == n.id && n.id != sink()) {
            if (const auto hop =
                    route_toward(n, n.known_loc.at(0), sc_.effective_theta_route())) {
                Packet fwd = build_packet(n, *hop, HandlerId::Alert, n.next_seq++, n.id,
                                          alert->to_bytes());
                transmit(n, std::move(fwd));
            }
        }
        return;
    }

    if (n.id == sink()) return;  // the base station does not sit on juries
    const NodeId suspect = alert->suspect;
    if (suspect == n.id) return;  // the suspect has no say in its own round
    if (!topo_->are_neighbors(n.id, suspect)) return;
    if (n.trust.is_isolated(suspect)) return;
    open_round(n, suspect);
}

void World::handle_vote(NodeState& n, const Packet& pkt, NodeId tx) {
    if (pkt.header.src != tx) return;
    const auto plain = open(n.neighbor_keys.at(tx), pkt.header.src, pkt.header.seq,
                            static_cast<std::uint8_t>(HandlerId::Vote), pkt.payload, pkt.mac);
    if (!plain) return;
    const auto vote = VotePayload::from_bytes(*plain);
    if (!vote) return;
    if (n.id == sink()) return;

    const NodeId suspect = vote->suspect;
    if (suspect == n.id) return;
    if (!topo_->are_neighbors(n.id, suspect)) return;
    if (!topo_->are_neighbors(tx, suspect)) return;  // only the suspect's neighbors vote
    if (n.trust.is_isolated(suspect)) return;

    open_round(n, suspect);
    auto it = n.rounds.find(suspect);
    if (it == n.rounds.end()) return;
    it->second.votes.push_back(
        {tx, suspect, vote->isolate != 0, vote->trust_claim_milli / 1000.0});
}

void World::handle_probe(NodeState& n, const Packet& pkt, NodeId tx) {
    if (pkt.header.src != tx) return;
    const auto plain = open(n.neighbor_keys.at(tx), pkt.header.src, pkt.header.seq,
                            static_cast<std::uint8_t>(HandlerId::TrustProbe), pkt.payload,
                            pkt.mac);
    if (!plain) return;
    const auto probe = ProbePayload::from_bytes(*plain);
    if (!probe) return;

    if (probe->kind == ProbeKind::Request) {
        // Mutual-trust gate: a probe is accepted only from a trusted sender.
        // The sink relays unconditionally: it is the trusted endpoint.
        if (n.id != sink() &&
            (n.trust.is_isolated(tx) || n.trust.trust_of(tx) < sc_.trust.theta_trust))
            return;

        if (probe->remote == n.id) {
            ProbePayload reply = *probe;
            reply.kind = ProbeKind::Confirm;
            send_probe_packet(n, tx, reply);
            return;
        }
        if (probe->budget == 0) {
            ProbePayload reply = *probe;
            reply.kind = ProbeKind::Reject;
            send_probe_packet(n, tx, reply);
            return;
        }
        const Location remote_loc{from_dm(probe->remote_x_dm), from_dm(probe->remote_y_dm)};
        const auto hop = route_toward(n, remote_loc, sc_.trust.theta_trust);
        if (!hop) {
            ProbePayload reply = *probe;
            reply.kind = ProbeKind::Reject;
            send_probe_packet(n, tx, reply);
            return;
        }
        n.probe_reverse[{probe->querier, probe->probe_seq}] = tx;
        ProbePayload fwd = *probe;
        fwd.budget--;
        send_probe_packet(n, *hop, fwd);
        return;
    }

    // Confirm / Reject retrace the reverse path back to the querier.
    if (probe->querier == n.id) {
        resolve_probe(n, probe->probe_seq,
                      probe->kind == ProbeKind::Confirm ? ProbeResult::Trusted
                                                        : ProbeResult::Untrusted);
        return;
    }
    auto it = n.probe_reverse.find({probe->querier, probe->probe_seq});
    if (it == n.probe_reverse.end()) return;
    const NodeId prev = it->second;
    n.probe_reverse.erase(it);
    send_probe_packet(n, prev, *probe);
}

void World::send_probe_packet(NodeState& n, NodeId to, const ProbePayload& payload) {
    Packet pkt =
        build_packet(n, to, HandlerId::TrustProbe, n.next_seq++, n.id, payload.to_bytes());
    transmit(n, std::move(pkt));
}

// ---------------------------------------------------------------------------
// timers

void World::ack_timeout(NodeId id, NodeId origin, std::uint16_t seq) {
    NodeState& n = nodes_[id];
    auto it = n.pending_acks.find({origin, seq});
    if (it == n.pending_acks.end()) return;
    const NodeId hop = it->second.hop;
    n.pending_acks.erase(it);

    bool forward_seen = false;
    if (WatchEntry* e = n.watch.match(origin, seq, hop)) {
        forward_seen = e->forward_seen;
        n.watch.drop(origin, seq, hop);
    }
    switch (resolve_ack_case(false, forward_seen)) {
        case AckOutcome::Positive:
            break;  // unreachable: positives resolve on ack receipt
        case AckOutcome::NoJudgment:
            break;  // forwarded but the ack got lost: channel ambiguity
        case AckOutcome::Negative:
            n.obs[hop].dropped++;
            emit_rule_event(id, {Rule::Ack, hop, Polarity::Negative,
                                 sc_.watchdog.w_neg_ack, queue_.now()});
            break;
    }
}

void World::watch_sweep(NodeId id) {
    NodeState& n = nodes_[id];
    n.watch.expire(queue_.now(), [&](const WatchEntry& e) {
        if (e.own_send) return;  // the ack timer owns that judgment
        n.obs[e.forwarder].dropped++;
        emit_rule_event(id, {Rule::Ack, e.forwarder, Polarity::Negative,
                             sc_.watchdog.w_neg_ack, queue_.now()});
    });
}

// ---------------------------------------------------------------------------
// trust flow

void World::emit_rule_event(NodeId observer, RuleEvent ev) {
    // The sink is trusted infrastructure, not a peer: it keeps no reputation
    // tables and nobody keeps one about it. Jam-induced ack losses on the
    // last hop would otherwise frame the base station itself.
    if (observer == sink() || ev.subject == sink()) return;
    NodeState& n = nodes_[observer];
    if (!topo_->are_neighbors(observer, ev.subject)) return;  // locality invariant

    const ApplyResult result = n.trust.apply(ev);
    if (!result.applied && !result.newly_isolated) return;
    rule_rows_.push_back(
        {queue_.now(), observer, ev.subject, ev.rule, ev.polarity, ev.weight});

    if (result.newly_isolated) {
        apply_isolation(n, ev.subject);
        return;
    }

    // A suspicion episode runs from an alert to the round it triggers. If
    // that round kept the suspect but the evidence keeps coming, the next
    // negative opens a fresh episode.
    const bool suspected_now = n.trust.status_of(ev.subject) == TrustStatus::Suspected;
    const bool fresh_negative = ev.polarity == Polarity::Negative && suspected_now;
    if (result.newly_suspected || fresh_negative) {
        if (n.rounds.count(ev.subject)) return;  // episode in progress
        auto it = n.last_alert.find(ev.subject);
        if (it != n.last_alert.end() &&
            queue_.now() - it->second < sc_.trust.vote_window)
            return;
        n.last_alert[ev.subject] = queue_.now();
        ++alerts_;
        broadcast_alert(n, ev.subject, ev.rule);
        open_round(n, ev.subject);
    }
}

void World::broadcast_alert(NodeState& n, NodeId suspect, Rule rule) {
    AlertPayload a;
    a.kind = AlertKind::Suspicion;
    a.suspect = suspect;
    a.rule = static_cast<std::uint8_t>(rule);
    Packet pkt =
        build_packet(n, kBroadcastId, HandlerId::Alert, n.next_seq++, n.id, a.to_bytes());
    transmit(n, std::move(pkt));
}

void World::open_round(NodeState& n, NodeId suspect) {
    if (n.id == sink()) return;
    if (suspect == n.id || n.trust.is_isolated(suspect)) return;
    if (!topo_->are_neighbors(n.id, suspect)) return;
    if (n.rounds.count(suspect)) return;

    VoteRound& round = n.rounds[suspect];
    round.suspect = suspect;
    round.deadline = queue_.now() + sc_.trust.vote_window;
    queue_.schedule(round.deadline, EventKind::VoteDeadline, n.id,
                    [this, id = n.id, suspect] { vote_deadline(id, suspect); });
    cast_vote(n, round);
}

void World::cast_vote(NodeState& n, VoteRound& round) {
    bool isolate = n.trust.trust_of(round.suspect) < sc_.trust.theta_trust;
    if (n.collusion && n.attack && queue_.now() >= n.activation_at &&
        n.collusion->target == round.suspect) {
        // Colluders vote the party line regardless of evidence.
        isolate = n.collusion->direction == CollusionSpec::Direction::BadMouth;
    }
    VotePayload v;
    v.suspect = round.suspect;
    v.isolate = isolate ? 1 : 0;
    v.trust_claim_milli = static_cast<std::uint16_t>(
        std::lround(std::clamp(n.trust.trust_of(round.suspect), 0.0, 1.0) * 1000.0));
    Packet pkt =
        build_packet(n, kBroadcastId, HandlerId::Vote, n.next_seq++, n.id, v.to_bytes());
    transmit(n, std::move(pkt));
    round.votes.push_back({n.id, round.suspect, isolate, n.trust.trust_of(round.suspect)});
}

void World::vote_deadline(NodeId id, NodeId suspect) {
    NodeState& n = nodes_[id];
    auto it = n.rounds.find(suspect);
    if (it == n.rounds.end()) return;
    if (n.trust.is_isolated(suspect)) {
        n.rounds.erase(it);
        return;
    }
    const Verdict verdict = tally_votes(it->second.votes, suspect,
                                        [&](NodeId voter) { return n.trust.vote_weight(voter); });
    n.rounds.erase(it);
    if (verdict == Verdict::Isolate) {
        apply_isolation(n, suspect);
        return;
    }
    // The jury kept the suspect, but this tallier still holds it below the
    // threshold: a new suspicion episode opens (at most one per epoch), so a
    // laggard's crossing during someone else's round is never lost.
    if (n.trust.status_of(suspect) == TrustStatus::Suspected) {
        auto last = n.last_alert.find(suspect);
        if (last == n.last_alert.end() || queue_.now() - last->second >= sc_.epoch) {
            n.last_alert[suspect] = queue_.now();
            ++alerts_;
            broadcast_alert(n, suspect, Rule::Ack);
            open_round(n, suspect);
        }
    }
}

void World::apply_isolation(NodeState& n, NodeId suspect) {
    if (n.notice_sent.count(suspect)) return;
    n.notice_sent.insert(suspect);
    n.trust.isolate(suspect);
    n.rounds.erase(suspect);
    ++isolation_events_;
    if (!n.is_bad() && n.id != suspect && !first_isolation_.count(suspect))
        first_isolation_[suspect] = queue_.now();

    NoticePayload notice{suspect};
    Packet pkt = build_packet(n, kBroadcastId, HandlerId::IsolationNotice, n.next_seq++,
                              n.id, notice.to_bytes());
    transmit(n, std::move(pkt));
}

// ---------------------------------------------------------------------------
// remote trust query

void World::issue_probe(const ProbeRequestSpec& spec) {
    NodeState& n = nodes_[spec.from];
    const Location remote_loc = topo_->position(spec.to);
    const unsigned h = hop_estimate(distance(n.loc, remote_loc), sc_.radio_range);
    const unsigned slack = spec.slack.value_or(sc_.remote_slack);
    const unsigned budget = h + slack;

    ProbePayload p;
    p.kind = ProbeKind::Request;
    p.querier = n.id;
    p.probe_seq = n.next_seq++;
    p.remote = spec.to;
    p.remote_x_dm = to_dm(remote_loc.x);
    p.remote_y_dm = to_dm(remote_loc.y);
    p.budget = static_cast<std::uint8_t>(std::min(budget, 255u));

    const auto hop = route_toward(n, remote_loc, sc_.trust.theta_trust);
    if (!hop) {
        probe_outcomes_.push_back(
            {n.id, spec.to, queue_.now(), queue_.now(), h, ProbeResult::Untrusted});
        return;
    }
    PendingProbe pending;
    pending.remote = spec.to;
    pending.hop_estimate = h;
    pending.retries_left = sc_.probe_retries;
    pending.issued_at = queue_.now();
    pending.remote_loc = remote_loc;
    pending.budget = budget;
    pending.timeout =
        queue_.schedule(queue_.now() + sc_.probe_timeout, EventKind::ProbeTimeout, n.id,
                        [this, id = n.id, seq = p.probe_seq] { probe_timeout(id, seq); });
    n.my_probes[p.probe_seq] = pending;
    send_probe_packet(n, *hop, p);
}

void World::probe_timeout(NodeId querier, std::uint16_t probe_seq) {
    NodeState& n = nodes_[querier];
    auto it = n.my_probes.find(probe_seq);
    if (it == n.my_probes.end()) return;
    PendingProbe& pending = it->second;
    if (pending.retries_left > 0) {
        pending.retries_left--;
        ProbePayload p;
        p.kind = ProbeKind::Request;
        p.querier = querier;
        p.probe_seq = probe_seq;
        p.remote = pending.remote;
        p.remote_x_dm = to_dm(pending.remote_loc.x);
        p.remote_y_dm = to_dm(pending.remote_loc.y);
        p.budget = static_cast<std::uint8_t>(std::min(pending.budget, 255u));
        if (const auto hop = route_toward(n, pending.remote_loc, sc_.trust.theta_trust)) {
            pending.timeout = queue_.schedule(
                queue_.now() + sc_.probe_timeout, EventKind::ProbeTimeout, querier,
                [this, querier, probe_seq] { probe_timeout(querier, probe_seq); });
            send_probe_packet(n, *hop, p);
            return;
        }
    }
    probe_outcomes_.push_back({querier, pending.remote, pending.issued_at, queue_.now(),
                               pending.hop_estimate, ProbeResult::Undecided});
    n.my_probes.erase(it);
}

void World::resolve_probe(NodeState& n, std::uint16_t probe_seq, ProbeResult result) {
    auto it = n.my_probes.find(probe_seq);
    if (it == n.my_probes.end()) return;
    queue_.cancel(it->second.timeout);
    probe_outcomes_.push_back({n.id, it->second.remote, it->second.issued_at, queue_.now(),
                               it->second.hop_estimate, result});
    n.my_probes.erase(it);
}

// ---------------------------------------------------------------------------
// helpers

std::optional<NodeId> World::route_toward(const NodeState& n, const Location& dst,
                                          double min_trust) const {
    std::vector<RouteCandidate> cands;
    const auto& nbs = topo_->neighbors(n.id);
    cands.reserve(nbs.size());
    for (NodeId nb : nbs) {
        auto loc_it = n.known_loc.find(nb);
        if (loc_it == n.known_loc.end()) continue;
        const bool eligible =
            !n.trust.is_isolated(nb) && n.trust.trust_of(nb) >= min_trust;
        cands.push_back({nb, loc_it->second, eligible});
    }
    return next_hop(n.loc, dst, cands);
}

MetricsReport World::report() {
    if (!finalized_) {
        finalize_metrics();
        finalized_ = true;
    }
    return report_;
}

void World::finalize_metrics() {
    MetricsReport& r = report_;
    r = MetricsReport{};
    const double qnan = std::nan("");

    r.packets_originated = originated_;
    r.packets_delivered = delivered_;
    r.bytes_total = bytes_total_;
    r.bytes_control = bytes_control_;
    r.alerts = alerts_;
    r.jam_alarms = jam_alarms_;
    r.isolation_events = isolation_events_;
    r.replays_detected = replays_;
    r.auth_failures_hopwise = auth_hop_;
    r.auth_failures_e2e = auth_e2e_;
    r.codec_errors = codec_errors_;
    r.routing_failures = routing_failures_;
    r.probes = probe_outcomes_;

    r.delivery_ratio = originated_settled_ > 0
                           ? static_cast<double>(delivered_settled_) / originated_settled_
                           : qnan;
    r.control_overhead =
        bytes_total_ > 0 ? static_cast<double>(bytes_control_) / bytes_total_ : qnan;

    // Ground truth scan: a node is detected once any honest sensor isolates
    // it. The sink holds no peer records and stays out of both scans.
    std::uint64_t bad = 0, detected = 0, honest = 0, falsely = 0;
    double tti_sum = 0.0;
    std::uint64_t tti_count = 0;
    for (NodeId s = 0; s < sc_.nodes; ++s) {
        bool isolated_by_honest = false;
        for (NodeId o = 1; o < sc_.nodes; ++o) {
            if (o == s || nodes_[o].is_bad()) continue;
            if (nodes_[o].trust.is_isolated(s)) {
                isolated_by_honest = true;
                break;
            }
        }
        if (nodes_[s].is_bad()) {
            ++bad;
            if (isolated_by_honest) {
                ++detected;
                auto it = first_isolation_.find(s);
                if (it != first_isolation_.end() && it->second >= nodes_[s].activation_at) {
                    tti_sum += static_cast<double>(it->second - nodes_[s].activation_at);
                    ++tti_count;
                }
            }
        } else {
            ++honest;
            if (isolated_by_honest) ++falsely;
        }
    }
    r.truly_bad_nodes = bad;
    r.detected_bad_nodes = detected;
    r.detection_rate = bad > 0 ? static_cast<double>(detected) / bad : qnan;
    r.false_positive_rate = honest > 0 ? static_cast<double>(falsely) / honest : qnan;
    r.mean_time_to_isolation = tti_count > 0 ? tti_sum / tti_count : qnan;

    // Disagreement: honest observer pairs with conflicting verdicts about a
    // common neighbor.
    std::uint64_t tuples = 0, conflicts = 0;
    for (NodeId s = 0; s < sc_.nodes; ++s) {
        std::vector<bool> verdicts;
        for (NodeId o : topo_->neighbors(s)) {
            if (o == sink() || nodes_[o].is_bad()) continue;
            verdicts.push_back(nodes_[o].trust.is_isolated(s));
        }
        std::uint64_t iso = 0;
        for (bool v : verdicts) iso += v ? 1 : 0;
        const std::uint64_t k = verdicts.size();
        tuples += k * (k - 1) / 2;
        conflicts += iso * (k - iso);
    }
    r.disagreement = tuples > 0 ? static_cast<double>(conflicts) / tuples : qnan;
}

}  // namespace wsn
