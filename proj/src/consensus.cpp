#include "moss/consensus.hpp"

#include <sstream>

namespace moss::consensus {

const char* msg_type_name(MsgType t) {
    switch (t) {
        case MsgType::PrePrepare: return "pre-prepare";
        case MsgType::Prepare: return "prepare";
        case MsgType::Commit: return "commit";
    }
    return "unknown";
}

const char* behavior_name(Behavior b) {
    switch (b) {
        case Behavior::Honest: return "honest";
        case Behavior::Silent: return "silent";
        case Behavior::Equivocating: return "equivocating";
        case Behavior::Corrupting: return "corrupting";
    }
    return "unknown";
}

std::optional<Behavior> behavior_from_name(std::string_view name) {
    for (auto b : {Behavior::Honest, Behavior::Silent, Behavior::Equivocating, Behavior::Corrupting})
        if (name == behavior_name(b)) return b;
    return std::nullopt;
}

Bytes Message::signing_bytes() const {
    Encoder e;
    e.put_u8(static_cast<uint8_t>(type));
    e.put_u32(view);
    e.put_u64(seq);
    e.put_hash(digest);
    e.put_u32(from);
    e.put_bool(block.has_value());
    if (block) e.put_bytes(block->encode());
    return e.take();
}

Message make_signed_message(const crypto::KeyPair& key, MsgType type, uint32_t view, uint64_t seq,
                            const Hash32& digest, uint32_t from, std::optional<Block> block) {
    Message m;
    m.type = type;
    m.view = view;
    m.seq = seq;
    m.digest = digest;
    m.from = from;
    m.block = std::move(block);
    Bytes msg = m.signing_bytes();
    m.signature = key.sign(msg);
    return m;
}

Replica::Replica(Setup setup, IdentityRegistry registry, ChainApp app)
    : setup_(std::move(setup)), registry_(std::move(registry)), app_(std::move(app)) {}

std::variant<std::vector<Outbound>, ProposeError> Replica::propose(uint64_t now, size_t max_batch) {
    if (!is_primary()) return ProposeError::NotPrimary;

    // Ledger admission runs here so a bad transaction never reaches a block;
    // nonces advance across the batch while filtering.
    std::vector<Transaction> drained = mempool_.drain(max_batch);
    std::vector<Transaction> batch;
    std::map<Address, uint64_t> nonces;
    for (Transaction& tx : drained) {
        auto it = nonces.find(tx.sender);
        uint64_t expected = it != nonces.end() ? it->second : chain_.next_nonce(tx.sender);
        if (check_transaction(tx, registry_, expected) != TxCheck::Ok) continue;
        nonces[tx.sender] = expected + 1;
        batch.push_back(std::move(tx));
    }
    if (batch.empty() && !setup_.allow_empty_batches) return ProposeError::EmptyBatchRejected;

    const Block& parent = chain_.head();
    Block block = make_block(chain_.next_height(), chain_.head_digest(), std::max(parent.timestamp + 1, now),
                             setup_.id, std::move(batch));
    Hash32 digest = block.digest();
    uint64_t seq = block.height;

    Slot& s = slot(view_, seq);
    s.candidate = block;
    s.accepted_digest = digest;
    s.has_accepted = true;
    s.validated = true;
    s.prepare_recorded = true;
    s.prepares[digest].insert(setup_.id);  // the pre-prepare doubles as the primary's prepare

    std::vector<Outbound> out;
    out.push_back({kBroadcast, make_signed_message(setup_.key, MsgType::PrePrepare, view_, seq, digest, setup_.id,
                                                   std::move(block))});
    try_progress(view_, seq, out);  // n == 1 commits on the spot
    return apply_behavior(std::move(out));
}

std::vector<Outbound> Replica::step(const Message& msg) {
    std::vector<Outbound> out;

    // Without view changes there is exactly one valid view; anything else
    // is noise.
    if (msg.from >= setup_.n || msg.from == setup_.id || msg.view != view_) {
        ++malformed_dropped_;
        return out;
    }
    Bytes signed_part = msg.signing_bytes();
    if (!crypto::verify(setup_.replica_keys[msg.from], signed_part, msg.signature)) {
        ++malformed_dropped_;
        return out;
    }

    if (msg.type == MsgType::PrePrepare) {
        // Must come from the view's primary and carry the digest of the
        // block it announces.
        if (msg.from != msg.view % setup_.n || !msg.block || msg.block->digest() != msg.digest ||
            msg.block->height != msg.seq) {
            ++malformed_dropped_;
            return out;
        }
        Slot& s = slot(msg.view, msg.seq);
        if (!s.has_accepted) {
            s.candidate = *msg.block;
            s.accepted_digest = msg.digest;
            s.has_accepted = true;
            s.prepares[msg.digest].insert(msg.from);
        }
        // A second, conflicting pre-prepare for the same slot is ignored:
        // one digest per (view, seq), first seen wins.
    } else {
        Slot& s = slot(msg.view, msg.seq);
        auto& tally = msg.type == MsgType::Prepare ? s.prepares : s.commits;
        tally[msg.digest].insert(msg.from);
    }

    try_progress(msg.view, msg.seq, out);
    return apply_behavior(std::move(out));
}

void Replica::try_progress(uint32_t view, uint64_t seq, std::vector<Outbound>& out) {
    Slot& s = slot(view, seq);
    if (!s.has_accepted || s.rejected) return;

    if (!s.validated && s.candidate->height == chain_.next_height()) {
        if (chain_.validate_next(*s.candidate, registry_)) {
            s.rejected = true;
            return;
        }
        s.validated = true;
    }
    if (!s.validated) return;  // parent not committed yet; revisited later

    if (!s.prepare_recorded) {
        s.prepare_recorded = true;
        s.prepares[s.accepted_digest].insert(setup_.id);
        out.push_back({kBroadcast, make_signed_message(setup_.key, MsgType::Prepare, view, seq, s.accepted_digest,
                                                       setup_.id, std::nullopt)});
    }

    if (!s.commit_sent && s.prepares[s.accepted_digest].size() >= quorum()) {
        s.commit_sent = true;
        s.commits[s.accepted_digest].insert(setup_.id);
        out.push_back({kBroadcast, make_signed_message(setup_.key, MsgType::Commit, view, seq, s.accepted_digest,
                                                       setup_.id, std::nullopt)});
    }

    if (!s.committed && s.commit_sent && s.commits[s.accepted_digest].size() >= quorum() &&
        s.candidate->height == chain_.next_height()) {
        Block block = *s.candidate;
        if (chain_.append_block(block, registry_)) throw std::logic_error("validated block failed to append");
        app_.apply_block(block);
        s.committed = true;
        newly_committed_.push_back(std::move(block));
        // The successor slot may have been waiting on this parent.
        if (slots_.contains({view, seq + 1})) try_progress(view, seq + 1, out);
    }
}

std::vector<Block> Replica::drain_committed() {
    std::vector<Block> out = std::move(newly_committed_);
    newly_committed_.clear();
    return out;
}

namespace {

Hash32 flip_last_byte(Hash32 h) {
    h[31] ^= 0x01;
    return h;
}

}  // namespace

std::vector<Outbound> Replica::apply_behavior(std::vector<Outbound> msgs) {
    switch (setup_.behavior) {
        case Behavior::Honest:
            return msgs;
        case Behavior::Silent:
            return {};
        case Behavior::Equivocating: {
            // Split-brain voting: even-numbered peers see the real message,
            // odd-numbered peers a conflicting one.
            std::vector<Outbound> out;
            for (Outbound& o : msgs) {
                for (uint32_t r = 0; r < setup_.n; ++r) {
                    if (r == setup_.id) continue;
                    if (o.to != kBroadcast && o.to != r) continue;
                    if (r % 2 == 0) {
                        out.push_back({r, o.msg});
                        continue;
                    }
                    Message alt = o.msg;
                    if (alt.type == MsgType::PrePrepare && alt.block) {
                        Block variant = *alt.block;
                        variant.timestamp += 1;  // a second, equally valid block
                        alt.digest = variant.digest();
                        alt.seq = variant.height;
                        alt.block = std::move(variant);
                    } else {
                        alt.digest = flip_last_byte(alt.digest);
                    }
                    out.push_back({r, make_signed_message(setup_.key, alt.type, alt.view, alt.seq, alt.digest,
                                                          setup_.id, std::move(alt.block))});
                }
            }
            return out;
        }
        case Behavior::Corrupting: {
            // Every outbound message carries tampered content, signed as if
            // nothing happened.
            std::vector<Outbound> out;
            for (Outbound& o : msgs) {
                Message alt = o.msg;
                if (alt.type == MsgType::PrePrepare && alt.block) {
                    Block corrupted = *alt.block;
                    if (!corrupted.transactions.empty()) {
                        corrupted.transactions[0].signature[0] ^= 0x01;  // merkle no longer matches
                    } else {
                        corrupted.merkle_root = flip_last_byte(corrupted.merkle_root);
                    }
                    alt.digest = corrupted.digest();
                    alt.block = std::move(corrupted);
                } else {
                    alt.digest = flip_last_byte(alt.digest);
                }
                out.push_back({o.to, make_signed_message(setup_.key, alt.type, alt.view, alt.seq, alt.digest,
                                                         setup_.id, std::move(alt.block))});
            }
            return out;
        }
    }
    return msgs;
}

SimNetwork::SimNetwork(NetworkConfig config, uint32_t replica_count)
    : config_(config), replica_count_(replica_count), rng_(config.seed) {
    for (auto edge : config_.drop_edges) drops_.insert(edge);
}

void SimNetwork::send(uint32_t from, uint32_t to, const Message& msg, std::vector<TraceEvent>& trace) {
    TraceEvent ev;
    ev.from = from;
    ev.to = to;
    ev.type = msg.type;
    ev.view = msg.view;
    ev.seq = msg.seq;
    ev.digest = msg.digest;
    if (drops_.contains({from, to})) {
        ev.kind = TraceEvent::Kind::Drop;
        trace.push_back(ev);
        return;
    }
    ev.kind = TraceEvent::Kind::Send;
    trace.push_back(ev);
    uint64_t delay = config_.min_delay;
    if (config_.max_delay > config_.min_delay)
        delay = std::uniform_int_distribution<uint64_t>(config_.min_delay, config_.max_delay)(rng_);
    queue_.push(Pending{clock_ + delay, sends_++, to, msg});
}

void SimNetwork::dispatch(uint32_t from, const Outbound& outbound, std::vector<TraceEvent>& trace) {
    if (outbound.to == kBroadcast) {
        for (uint32_t r = 0; r < replica_count_; ++r)
            if (r != from) send(from, r, outbound.msg, trace);
    } else {
        send(from, outbound.to, outbound.msg, trace);
    }
}

SimNetwork::Delivery SimNetwork::pop() {
    Pending next = queue_.top();
    queue_.pop();
    clock_ = std::max(clock_, next.deliver_at);
    return Delivery{next.to, std::move(next.msg)};
}

RunStatus run_until_quiescent(SimNetwork& net, std::vector<Replica>& replicas, uint64_t max_steps,
                              std::vector<TraceEvent>& trace, uint64_t& step_counter) {
    uint64_t steps = 0;
    while (!net.empty()) {
        if (steps >= max_steps) return RunStatus::StepBudgetExhausted;
        ++steps;
        ++step_counter;
        SimNetwork::Delivery delivery = net.pop();
        Replica& replica = replicas[delivery.to];

        TraceEvent ev;
        ev.kind = TraceEvent::Kind::Deliver;
        ev.step = step_counter;
        ev.from = delivery.msg.from;
        ev.to = delivery.to;
        ev.type = delivery.msg.type;
        ev.view = delivery.msg.view;
        ev.seq = delivery.msg.seq;
        ev.digest = delivery.msg.digest;
        trace.push_back(ev);

        std::vector<Outbound> out = replica.step(delivery.msg);
        for (const Outbound& o : out) net.dispatch(replica.id(), o, trace);

        for (const Block& block : replica.drain_committed()) {
            TraceEvent commit;
            commit.kind = TraceEvent::Kind::Commit;
            commit.step = step_counter;
            commit.from = replica.id();
            commit.to = replica.id();
            commit.view = delivery.msg.view;
            commit.seq = block.height;
            commit.digest = block.digest();
            commit.height = block.height;
            trace.push_back(commit);
        }
    }
    return RunStatus::Quiescent;
}

std::optional<SafetyViolation> audit_safety(const std::vector<TraceEvent>& trace,
                                            const std::function<bool(uint32_t)>& is_honest) {
    std::map<uint64_t, std::pair<Hash32, uint32_t>> committed;
    for (const TraceEvent& ev : trace) {
        if (ev.kind != TraceEvent::Kind::Commit || !is_honest(ev.to)) continue;
        auto it = committed.find(ev.height);
        if (it == committed.end()) {
            committed[ev.height] = {ev.digest, ev.to};
        } else if (it->second.first != ev.digest) {
            return SafetyViolation{ev.height, it->second.second, ev.to, it->second.first, ev.digest};
        }
    }
    return std::nullopt;
}

const char* trace_kind_name(TraceEvent::Kind k) {
    switch (k) {
        case TraceEvent::Kind::Send: return "send";
        case TraceEvent::Kind::Deliver: return "deliver";
        case TraceEvent::Kind::Drop: return "drop";
        case TraceEvent::Kind::Commit: return "commit";
    }
    return "unknown";
}

std::string trace_to_jsonl(const std::vector<TraceEvent>& trace) {
    std::ostringstream out;
    for (const TraceEvent& ev : trace) {
        out << R"({"kind":")" << trace_kind_name(ev.kind) << R"(","step":)" << ev.step << R"(,"from":)" << ev.from
            << R"(,"to":)" << ev.to << R"(,"type":")" << msg_type_name(ev.type) << R"(","view":)" << ev.view
            << R"(,"seq":)" << ev.seq << R"(,"digest":")" << to_hex(ev.digest) << '"';
        if (ev.kind == TraceEvent::Kind::Commit) out << R"(,"height":)" << ev.height;
        out << "}\n";
    }
    return out.str();
}

}  // namespace moss::consensus
