#pragma once

#include "moss/chain.hpp"
#include "moss/chain_app.hpp"

#include <functional>
#include <queue>
#include <random>
#include <variant>

namespace moss::consensus {

enum class MsgType : uint8_t { PrePrepare = 0, Prepare = 1, Commit = 2 };

const char* msg_type_name(MsgType t);

struct Message {
    MsgType type = MsgType::Prepare;
    uint32_t view = 0;
    uint64_t seq = 0;          // equals the proposed block height
    Hash32 digest{};           // block digest being voted on
    uint32_t from = 0;
    std::optional<Block> block;  // carried by pre-prepare only
    crypto::Signature signature{};

    Bytes signing_bytes() const;
};

Message make_signed_message(const crypto::KeyPair& key, MsgType type, uint32_t view, uint64_t seq,
                            const Hash32& digest, uint32_t from, std::optional<Block> block);

enum class Behavior : uint8_t { Honest, Silent, Equivocating, Corrupting };

const char* behavior_name(Behavior b);
std::optional<Behavior> behavior_from_name(std::string_view name);

// An outbound message: to == kBroadcast means every other replica.
inline constexpr uint32_t kBroadcast = ~0u;

struct Outbound {
    uint32_t to = kBroadcast;
    Message msg;
};

enum class ProposeError { NotPrimary, EmptyBatchRejected };

// One PBFT replica: pre-prepare / prepare / commit with quorum 2f+1,
// f = (n-1)/3. View changes are out of scope; a stuck primary surfaces as
// a step-budget exhaustion in the driver, never as a safety violation.
class Replica {
  public:
    struct Setup {
        uint32_t id = 0;
        uint32_t n = 4;
        Behavior behavior = Behavior::Honest;
        crypto::KeyPair key;
        std::vector<crypto::PublicKey> replica_keys;  // index == replica id
        bool allow_empty_batches = false;
    };

    Replica(Setup setup, IdentityRegistry registry, ChainApp app);

    uint32_t id() const { return setup_.id; }
    Behavior behavior() const { return setup_.behavior; }
    bool is_primary() const { return view_ % setup_.n == setup_.id; }
    uint32_t f() const { return (setup_.n - 1) / 3; }
    uint32_t quorum() const { return 2 * f() + 1; }

    Mempool& mempool() { return mempool_; }

    // Drains up to max_batch valid transactions from the mempool and emits
    // the pre-prepare. Transactions that fail ledger admission are excluded.
    std::variant<std::vector<Outbound>, ProposeError> propose(uint64_t now, size_t max_batch);

    // Protocol step: may emit votes and may finalize blocks into the chain.
    std::vector<Outbound> step(const Message& msg);

    const Chain& chain() const { return chain_; }
    const ChainApp& app() const { return app_; }
    // Blocks finalized since the last call; in commit order.
    std::vector<Block> drain_committed();

    uint64_t malformed_dropped() const { return malformed_dropped_; }

  private:
    struct Slot {
        std::optional<Block> candidate;      // from pre-prepare, maybe not yet validated
        Hash32 accepted_digest{};
        bool has_accepted = false;           // pre-prepare seen, not yet rejected
        bool validated = false;              // passed ledger validation against our head
        bool rejected = false;
        bool prepare_recorded = false;
        bool commit_sent = false;
        bool committed = false;
        std::map<Hash32, std::set<uint32_t>> prepares;
        std::map<Hash32, std::set<uint32_t>> commits;
    };

    Slot& slot(uint32_t view, uint64_t seq) { return slots_[{view, seq}]; }
    void try_progress(uint32_t view, uint64_t seq, std::vector<Outbound>& out);
    std::vector<Outbound> apply_behavior(std::vector<Outbound> msgs);

    Setup setup_;
    IdentityRegistry registry_;
    uint32_t view_ = 0;
    Chain chain_;
    ChainApp app_;
    Mempool mempool_;
    std::map<std::pair<uint32_t, uint64_t>, Slot> slots_;
    std::vector<Block> newly_committed_;
    uint64_t malformed_dropped_ = 0;
};

struct TraceEvent {
    enum class Kind : uint8_t { Send, Deliver, Drop, Commit };
    Kind kind = Kind::Deliver;
    uint64_t step = 0;
    uint32_t from = 0;
    uint32_t to = 0;      // replica id; for Commit, the committing replica
    MsgType type = MsgType::Prepare;
    uint32_t view = 0;
    uint64_t seq = 0;
    Hash32 digest{};
    uint64_t height = 0;  // Commit only
};

const char* trace_kind_name(TraceEvent::Kind k);

struct NetworkConfig {
    uint64_t seed = 0;
    uint32_t min_delay = 1;
    uint32_t max_delay = 4;
    std::vector<std::pair<uint32_t, uint32_t>> drop_edges;  // (from, to), always dropped
};

// Deterministic message scheduler: identical (seed, config, send sequence)
// yields an identical delivery order, hence identical traces.
class SimNetwork {
  public:
    SimNetwork(NetworkConfig config, uint32_t replica_count);

    void send(uint32_t from, uint32_t to, const Message& msg, std::vector<TraceEvent>& trace);
    void dispatch(uint32_t from, const Outbound& outbound, std::vector<TraceEvent>& trace);

    bool empty() const { return queue_.empty(); }

    struct Delivery {
        uint32_t to = 0;
        Message msg;
    };
    Delivery pop();

  private:
    struct Pending {
        uint64_t deliver_at;
        uint64_t order;  // tie-break: global send counter
        uint32_t to;
        Message msg;
        bool operator>(const Pending& other) const {
            return std::tie(deliver_at, order) > std::tie(other.deliver_at, other.order);
        }
    };

    NetworkConfig config_;
    uint32_t replica_count_;
    std::mt19937_64 rng_;
    std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
    uint64_t clock_ = 0;
    uint64_t sends_ = 0;
    std::set<std::pair<uint32_t, uint32_t>> drops_;
};

enum class RunStatus { Quiescent, StepBudgetExhausted };

// Delivers queued messages until the network drains or the budget runs out.
RunStatus run_until_quiescent(SimNetwork& net, std::vector<Replica>& replicas, uint64_t max_steps,
                              std::vector<TraceEvent>& trace, uint64_t& step_counter);

// No two honest replicas may commit different digests at the same height.
struct SafetyViolation {
    uint64_t height = 0;
    uint32_t replica_a = 0;
    uint32_t replica_b = 0;
    Hash32 digest_a{};
    Hash32 digest_b{};
};

std::optional<SafetyViolation> audit_safety(const std::vector<TraceEvent>& trace,
                                            const std::function<bool(uint32_t)>& is_honest);

std::string trace_to_jsonl(const std::vector<TraceEvent>& trace);

}  // namespace moss::consensus
