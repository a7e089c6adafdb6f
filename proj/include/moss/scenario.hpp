#pragma once

#include "moss/chainfile.hpp"
#include "moss/consensus.hpp"

namespace moss {

struct OperatorSpec {
    std::string id;
    std::string key_label;
    Role role = Role::Seller;
    uint64_t total_bandwidth_mhz = 0;     // sellers
    uint64_t required_bandwidth_mhz = 0;  // sellers
    uint32_t amount_mhz = 0;              // offered or demanded
    uint64_t unit_price_gwei = 0;
    Wei initial_balance_wei = 100 * kWeiPerEth;
    Wei deposit_wei = kWeiPerEth;
};

struct TimingSpec {
    uint64_t t0 = 0;
    uint64_t t_bid = 0;
    uint64_t t1 = 0;
    uint64_t t_free = 0;
    uint64_t tb = 0;
    uint64_t te = 0;
};

struct ConsensusSpec {
    uint32_t replicas = 4;
    uint64_t seed = 42;
    uint32_t min_delay = 1;
    uint32_t max_delay = 4;
    size_t max_batch = 64;
    uint64_t max_steps = 1'000'000;
    std::map<uint32_t, consensus::Behavior> behaviors;  // unlisted replicas are honest
    std::vector<std::pair<uint32_t, uint32_t>> drop_edges;
};

enum class ActionKind {
    Deploy,
    Submit,
    RegistrationEnd,
    SortAsks,
    SortBids,
    DoubleAuction,
    FreeTradeBegin,
    Resubmit,
    Purchase,
    DeleteOrder,
    MarketEnd,
    PayOrNot,
    IncreaseFunds,
    Withdraw,
    ChangeOwner,
    SelfDestruct,
};

struct ScriptAction {
    uint64_t at = 0;          // logical block time for this action
    std::string actor;        // "admin" or an operator id
    ActionKind kind = ActionKind::RegistrationEnd;
    std::string target;       // purchase seller / punished op / new owner
    uint64_t unit_price_gwei = 0;
    uint32_t bandwidth_mhz = 0;
    Wei value_wei = 0;        // explicit value override (submit, increase_funds)
    bool executed = true;     // pay_or_not flag

    enum class Expect { Ok, Revert, Any } expect = Expect::Ok;
    std::optional<Revert> expect_reason;  // set when a specific revert is required
};

struct Scenario {
    std::string name;
    std::string admin_key_label = "admin";
    Wei admin_balance_wei = 100 * kWeiPerEth;
    std::vector<OperatorSpec> operators;
    TimingSpec timing;
    ConsensusSpec consensus;
    GasPrice gas_price = GasPrice::from_gwei_rational(43, 10);
    std::map<FunctionId, uint64_t> gas_overrides;
    std::optional<uint64_t> order_response_seller_gas_override;
    std::vector<ScriptAction> script;
};

struct ConfigError : std::runtime_error {
    std::vector<std::string> diagnostics;
    explicit ConfigError(std::vector<std::string> diags);
};

// Parses and validates a scenario config; throws ConfigError with one
// diagnostic per offending field.
Scenario scenario_from_json(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

struct RunOptions {
    std::optional<uint64_t> seed_override;
    std::optional<GasPrice> gas_price_override;
    std::string out_dir;             // artifacts land here when non-empty
    std::string report_path;         // defaults to <out_dir>/report.txt
    bool write_trace = true;
};

struct ActionOutcome {
    size_t script_index = 0;
    bool committed = false;
    TxStatus status = TxStatus::Ok;
    std::optional<Revert> revert_reason;
    bool as_expected = true;
};

struct RunResult {
    int exit_code = 0;
    Hash32 state_digest{};
    std::vector<MatchRecord> matches;
    std::vector<Event> events;
    std::vector<Receipt> receipts;               // committed order, canonical replica
    std::map<std::string, Wei> final_balances;   // external, by label
    std::map<std::string, Wei> final_deposits;   // remaining in-contract, by label
    std::vector<std::string> punished;
    Wei fees_collected = 0;
    uint64_t chain_length = 0;
    std::vector<ActionOutcome> action_outcomes;
    std::vector<std::string> divergences;        // unexpected script outcomes
    bool conservation_ok = true;
    bool consensus_stalled = false;
    std::optional<consensus::SafetyViolation> safety_violation;
    std::vector<Hash32> honest_state_digests;    // one per honest replica
    std::string report_text;
    std::string chain_path;
    std::string events_path;
    std::string trace_path;
    // Label lookup for tests: operator id -> wallet address.
    std::map<std::string, Address> addresses;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& options);

enum class VerifyStatus { Ok, CorruptFile, VerificationFailed };

struct VerifyResult {
    VerifyStatus status = VerifyStatus::Ok;
    uint64_t failed_height = 0;
    std::string reason;
    Hash32 state_digest{};
    uint64_t chain_length = 0;
};

// Full re-verification of a persisted chain: container checksums, linkage,
// merkle roots, signatures, nonces, then a complete state replay.
VerifyResult verify_chain(const std::string& chain_path);

std::string event_to_jsonl(const Event& ev);

}  // namespace moss
