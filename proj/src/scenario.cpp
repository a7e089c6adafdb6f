#include "moss/scenario.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace moss {

using nlohmann::json;

ConfigError::ConfigError(std::vector<std::string> diags)
    : std::runtime_error("invalid scenario config: " + (diags.empty() ? std::string("unknown") : diags.front()) +
                         (diags.size() > 1 ? " (+" + std::to_string(diags.size() - 1) + " more)" : "")),
      diagnostics(std::move(diags)) {}

namespace {

struct Diagnostics {
    std::vector<std::string> errors;
    void add(const std::string& field, const std::string& what) { errors.push_back(field + ": " + what); }
    void require(bool ok, const std::string& field, const std::string& what) {
        if (!ok) add(field, what);
    }
    void raise_if_any() {
        if (!errors.empty()) throw ConfigError(std::move(errors));
    }
};

// Accepts whole-eth integers or exact decimal strings like "1.5".
std::optional<Wei> parse_eth(const json& v) {
    if (v.is_number_unsigned()) return static_cast<Wei>(v.get<uint64_t>()) * kWeiPerEth;
    if (!v.is_string()) return std::nullopt;
    std::string s = v.get<std::string>();
    auto dot = s.find('.');
    std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (frac.size() > 18) return std::nullopt;
    try {
        Wei result = (whole.empty() ? 0 : wei_from_string(whole)) * kWeiPerEth;
        if (!frac.empty()) {
            frac.append(18 - frac.size(), '0');
            result += wei_from_string(frac);
        }
        return result;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

const std::map<std::string, ActionKind> kActionNames = {
    {"deploy", ActionKind::Deploy},
    {"submit", ActionKind::Submit},
    {"registration_end", ActionKind::RegistrationEnd},
    {"sort_asks", ActionKind::SortAsks},
    {"sort_bids", ActionKind::SortBids},
    {"double_auction", ActionKind::DoubleAuction},
    {"free_trade_begin", ActionKind::FreeTradeBegin},
    {"resubmit", ActionKind::Resubmit},
    {"purchase", ActionKind::Purchase},
    {"delete_order", ActionKind::DeleteOrder},
    {"market_end", ActionKind::MarketEnd},
    {"pay_or_not", ActionKind::PayOrNot},
    {"increase_funds", ActionKind::IncreaseFunds},
    {"withdraw", ActionKind::Withdraw},
    {"change_owner", ActionKind::ChangeOwner},
    {"self_destruct", ActionKind::SelfDestruct},
};

std::optional<Revert> revert_from_name(std::string_view name) {
    for (int i = 0; i <= static_cast<int>(Revert::InsufficientBalance); ++i) {
        auto r = static_cast<Revert>(i);
        if (name == revert_name(r)) return r;
    }
    return std::nullopt;
}

FunctionId function_for_action(ActionKind kind) {
    switch (kind) {
        case ActionKind::Deploy: return FunctionId::Deploy;
        case ActionKind::Submit: return FunctionId::BidOrAskSubmit;
        case ActionKind::RegistrationEnd: return FunctionId::RegistrationEnd;
        case ActionKind::SortAsks: return FunctionId::SortAskByIncrease;
        case ActionKind::SortBids: return FunctionId::SortBidByDecrease;
        case ActionKind::DoubleAuction: return FunctionId::DoubleAuction;
        case ActionKind::FreeTradeBegin: return FunctionId::FreeTradeBegin;
        case ActionKind::Resubmit: return FunctionId::OrderResponse;
        case ActionKind::Purchase: return FunctionId::OrderResponse;
        case ActionKind::DeleteOrder: return FunctionId::DeleteOrder;
        case ActionKind::MarketEnd: return FunctionId::MarketEnd;
        case ActionKind::PayOrNot: return FunctionId::PayOrNot;
        case ActionKind::IncreaseFunds: return FunctionId::IncreaseFunds;
        case ActionKind::Withdraw: return FunctionId::Withdraw;
        case ActionKind::ChangeOwner: return FunctionId::ChangeOwner;
        case ActionKind::SelfDestruct: return FunctionId::SelfDestruct;
    }
    return FunctionId::RegistrationEnd;
}

}  // namespace

Scenario scenario_from_json(const std::string& json_text) {
    Diagnostics diag;
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        diag.add("(file)", std::string("not valid JSON: ") + err.what());
        diag.raise_if_any();
    }

    Scenario sc;
    if (root.value("version", 1) != 1) diag.add("version", "unsupported config version");
    sc.name = root.value("name", "scenario");

    if (root.contains("admin")) {
        const json& admin = root["admin"];
        sc.admin_key_label = admin.value("key_label", "admin");
        if (admin.contains("balance_eth")) {
            auto wei = parse_eth(admin["balance_eth"]);
            if (!wei) diag.add("admin.balance_eth", "expected whole eth or decimal string");
            else sc.admin_balance_wei = *wei;
        }
    }

    std::set<std::string> ids;
    for (size_t i = 0; i < root.value("operators", json::array()).size(); ++i) {
        const json& op = root["operators"][i];
        std::string where = "operators[" + std::to_string(i) + "]";
        OperatorSpec spec;
        spec.id = op.value("id", "");
        if (spec.id.empty()) diag.add(where + ".id", "missing");
        if (!ids.insert(spec.id).second) diag.add(where + ".id", "duplicate operator id " + spec.id);
        spec.key_label = op.value("key_label", spec.id);
        std::string role = op.value("role", "");
        if (role == "seller") spec.role = Role::Seller;
        else if (role == "buyer") spec.role = Role::Buyer;
        else diag.add(where + ".role", "must be \"seller\" or \"buyer\"");
        spec.total_bandwidth_mhz = op.value("total_bandwidth_mhz", 0ull);
        spec.required_bandwidth_mhz = op.value("required_bandwidth_mhz", 0ull);
        spec.amount_mhz = op.value("amount_mhz", 0u);
        spec.unit_price_gwei = op.value("price_gwei", 0ull);
        if (spec.amount_mhz == 0) diag.add(where + ".amount_mhz", "must be positive");
        if (spec.unit_price_gwei == 0) diag.add(where + ".price_gwei", "must be positive");
        if (op.contains("balance_eth")) {
            auto wei = parse_eth(op["balance_eth"]);
            if (!wei) diag.add(where + ".balance_eth", "expected whole eth or decimal string");
            else spec.initial_balance_wei = *wei;
        }
        if (op.contains("deposit_eth")) {
            auto wei = parse_eth(op["deposit_eth"]);
            if (!wei) diag.add(where + ".deposit_eth", "expected whole eth or decimal string");
            else spec.deposit_wei = *wei;
        }
        // Seller bandwidth constraint: what is offered must leave the
        // required service bandwidth untouched.
        if (spec.role == Role::Seller &&
            (spec.total_bandwidth_mhz < spec.amount_mhz ||
             spec.total_bandwidth_mhz - spec.amount_mhz < spec.required_bandwidth_mhz)) {
            diag.add(where, "seller constraint violated: total - offered < required");
        }
        sc.operators.push_back(std::move(spec));
    }

    if (!root.contains("timing")) {
        diag.add("timing", "missing");
    } else {
        const json& t = root["timing"];
        sc.timing.t0 = t.value("t0", 0ull);
        sc.timing.t_bid = t.value("t_bid", 0ull);
        sc.timing.t1 = t.value("t1", 0ull);
        sc.timing.t_free = t.value("t_free", 0ull);
        sc.timing.tb = t.value("tb", 0ull);
        sc.timing.te = t.value("te", 0ull);
        diag.require(sc.timing.t0 > 0, "timing.t0", "must be positive (genesis holds timestamp 0)");
        diag.require(sc.timing.t0 + sc.timing.t_bid < sc.timing.t1, "timing.t1", "must exceed t0 + t_bid");
        diag.require(sc.timing.t1 + sc.timing.t_free < sc.timing.tb, "timing.tb", "must exceed t1 + t_free");
        diag.require(sc.timing.tb < sc.timing.te, "timing.te", "must exceed tb");
    }

    if (root.contains("consensus")) {
        const json& c = root["consensus"];
        sc.consensus.replicas = c.value("replicas", 4u);
        sc.consensus.seed = c.value("seed", 42ull);
        sc.consensus.min_delay = c.value("min_delay", 1u);
        sc.consensus.max_delay = c.value("max_delay", 4u);
        sc.consensus.max_batch = c.value("max_batch", size_t{64});
        sc.consensus.max_steps = c.value("max_steps", 1'000'000ull);
        diag.require(sc.consensus.replicas >= 1, "consensus.replicas", "must be at least 1");
        diag.require(sc.consensus.min_delay <= sc.consensus.max_delay, "consensus.min_delay", "exceeds max_delay");
        const json behaviors = c.value("behaviors", json::object());
        for (const auto& [key, value] : behaviors.items()) {
            uint32_t id = 0;
            try {
                id = static_cast<uint32_t>(std::stoul(key));
            } catch (const std::exception&) {
                diag.add("consensus.behaviors", "bad replica id " + key);
                continue;
            }
            auto behavior = consensus::behavior_from_name(value.get<std::string>());
            if (!behavior || id >= sc.consensus.replicas)
                diag.add("consensus.behaviors." + key, "unknown behavior or replica id out of range");
            else
                sc.consensus.behaviors[id] = *behavior;
        }
        for (const json& edge : c.value("drop_edges", json::array())) {
            if (!edge.is_array() || edge.size() != 2) {
                diag.add("consensus.drop_edges", "each edge must be [from, to]");
                continue;
            }
            sc.consensus.drop_edges.emplace_back(edge[0].get<uint32_t>(), edge[1].get<uint32_t>());
        }
    }

    if (root.contains("gas")) {
        const json& g = root["gas"];
        if (g.contains("price_gwei")) {
            try {
                if (g["price_gwei"].is_string())
                    sc.gas_price = GasPrice::from_gwei_string(g["price_gwei"].get<std::string>());
                else
                    sc.gas_price = GasPrice::from_gwei_rational(g["price_gwei"].get<uint64_t>(), 1);
            } catch (const std::exception& err) {
                diag.add("gas.price_gwei", err.what());
            }
        }
        const json overrides = g.value("overrides", json::object());
        for (const auto& [name, value] : overrides.items()) {
            if (name == "orderResponseSeller") {
                sc.order_response_seller_gas_override = value.get<uint64_t>();
                continue;
            }
            auto func = function_from_name(name);
            if (!func) diag.add("gas.overrides." + name, "unknown function");
            else sc.gas_overrides[*func] = value.get<uint64_t>();
        }
    }

    uint64_t last_at = 0;
    for (size_t i = 0; i < root.value("script", json::array()).size(); ++i) {
        const json& a = root["script"][i];
        std::string where = "script[" + std::to_string(i) + "]";
        ScriptAction action;
        action.at = a.value("at", 0ull);
        diag.require(action.at >= last_at, where + ".at", "script times must be non-decreasing");
        last_at = std::max(last_at, action.at);
        action.actor = a.value("actor", "");
        if (action.actor != "admin" && !ids.contains(action.actor))
            diag.add(where + ".actor", "unknown actor " + action.actor);

        std::string name = a.value("action", "");
        auto kind = kActionNames.find(name);
        if (kind == kActionNames.end()) {
            diag.add(where + ".action", "unknown action " + name);
            continue;
        }
        action.kind = kind->second;
        action.target = a.value("target", "");
        action.unit_price_gwei = a.value("price_gwei", 0ull);
        action.bandwidth_mhz = a.value("bandwidth_mhz", 0u);
        action.executed = a.value("executed", true);
        if (a.contains("value_eth")) {
            auto wei = parse_eth(a["value_eth"]);
            if (!wei) diag.add(where + ".value_eth", "expected whole eth or decimal string");
            else action.value_wei = *wei;
        }

        bool needs_target = action.kind == ActionKind::Purchase || action.kind == ActionKind::PayOrNot ||
                            action.kind == ActionKind::ChangeOwner;
        if (needs_target && action.target != "admin" && !ids.contains(action.target))
            diag.add(where + ".target", "unknown target " + action.target);
        if (action.kind == ActionKind::Submit && !ids.contains(action.actor))
            diag.add(where + ".actor", "submit requires an operator actor");
        if ((action.kind == ActionKind::Resubmit || action.kind == ActionKind::Purchase) &&
            (action.unit_price_gwei == 0 || action.bandwidth_mhz == 0))
            diag.add(where, "price_gwei and bandwidth_mhz required");

        std::string expect = a.value("expect", "ok");
        if (expect == "ok") {
            action.expect = ScriptAction::Expect::Ok;
        } else if (expect == "any") {
            action.expect = ScriptAction::Expect::Any;
        } else if (expect == "revert") {
            action.expect = ScriptAction::Expect::Revert;
        } else if (expect.starts_with("revert:")) {
            action.expect = ScriptAction::Expect::Revert;
            auto reason = revert_from_name(expect.substr(7));
            if (!reason) diag.add(where + ".expect", "unknown revert reason " + expect.substr(7));
            action.expect_reason = reason;
        } else {
            diag.add(where + ".expect", "expected ok | any | revert | revert:<reason>");
        }
        sc.script.push_back(std::move(action));
    }

    diag.raise_if_any();
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::stringstream buffer;
    buffer << in.rdbuf();
    return scenario_from_json(buffer.str());
}

namespace {

struct Participant {
    std::string label;
    crypto::KeyPair key;
    Address address;
};

}  // namespace

// The on-chain log shows addresses only; operator identity stays off chain.
std::string event_to_jsonl(const Event& ev) {
    std::ostringstream out;
    out << R"({"block_height":)" << ev.block_height << R"(,"index":)" << ev.index << R"(,"kind":")"
        << event_kind_name(ev.kind) << '"';
    switch (ev.kind) {
        case EventKind::LogRegisterOp:
            out << R"(,"address":")" << to_hex(ev.address_a) << R"(","role":")" << role_name(ev.role)
                << R"(","bandwidth_mhz":)" << ev.bandwidth_mhz << R"(,"price_gwei":)" << ev.unit_price_gwei;
            break;
        case EventKind::LogDealRecord:
            out << R"(,"seller":")" << to_hex(ev.address_a) << R"(","buyer":")" << to_hex(ev.address_b)
                << R"(","amount_mhz":)" << ev.bandwidth_mhz << R"(,"price_gwei":)" << ev.unit_price_gwei;
            break;
        case EventKind::LogFreeMarketOrder:
            out << R"(,"address":")" << to_hex(ev.address_a) << R"(","price_gwei":)" << ev.unit_price_gwei
                << R"(,"bandwidth_mhz":)" << ev.bandwidth_mhz;
            break;
        case EventKind::LogBuyerSkipped:
            out << R"(,"buyer":")" << to_hex(ev.address_a) << R"(","price_gwei":)" << ev.unit_price_gwei
                << R"(,"amount_mhz":)" << ev.bandwidth_mhz;
            break;
    }
    out << "}";
    return out.str();
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
    RunResult result;

    // Participants and the certificate authority.
    Participant admin{"admin", crypto::KeyPair::from_label(scenario.admin_key_label), {}};
    admin.address = admin.key.address();
    IdentityRegistry registry(admin.key.public_key());

    std::map<std::string, Participant> participants;
    std::map<Address, std::string> labels;
    participants["admin"] = admin;
    labels[admin.address] = "admin";
    for (const OperatorSpec& spec : scenario.operators) {
        Participant p{spec.id, crypto::KeyPair::from_label(spec.key_label), {}};
        p.address = p.key.address();
        registry.register_operator(admin.key, spec.id, p.key.public_key());
        labels[p.address] = spec.id;
        participants[spec.id] = p;
        result.addresses[spec.id] = p.address;
    }
    result.addresses["admin"] = admin.address;

    GasSchedule schedule = GasSchedule::published_default();
    schedule.gas_price = options.gas_price_override.value_or(scenario.gas_price);
    for (const auto& [func, gas] : scenario.gas_overrides) schedule.per_function_gas[func] = gas;
    if (scenario.order_response_seller_gas_override)
        schedule.order_response_seller_gas = *scenario.order_response_seller_gas_override;

    ChainApp base_app(admin.address, schedule);
    base_app.set_initial_balance(admin.address, scenario.admin_balance_wei);
    for (const OperatorSpec& spec : scenario.operators)
        base_app.set_initial_balance(participants.at(spec.id).address, spec.initial_balance_wei);

    // Consensus replicas over the deterministic network.
    const uint32_t n = scenario.consensus.replicas;
    std::vector<crypto::PublicKey> replica_keys;
    std::vector<crypto::KeyPair> replica_keypairs;
    for (uint32_t i = 0; i < n; ++i) {
        replica_keypairs.push_back(crypto::KeyPair::from_label("replica-" + std::to_string(i)));
        replica_keys.push_back(replica_keypairs.back().public_key());
    }
    std::vector<consensus::Replica> replicas;
    for (uint32_t i = 0; i < n; ++i) {
        consensus::Replica::Setup setup;
        setup.id = i;
        setup.n = n;
        auto behavior = scenario.consensus.behaviors.find(i);
        setup.behavior = behavior == scenario.consensus.behaviors.end() ? consensus::Behavior::Honest
                                                                        : behavior->second;
        setup.key = replica_keypairs[i];
        setup.replica_keys = replica_keys;
        replicas.emplace_back(setup, registry, base_app);
    }
    auto is_honest = [&](uint32_t id) {
        auto it = scenario.consensus.behaviors.find(id);
        return it == scenario.consensus.behaviors.end() || it->second == consensus::Behavior::Honest;
    };

    consensus::NetworkConfig net_config;
    net_config.seed = options.seed_override.value_or(scenario.consensus.seed);
    net_config.min_delay = scenario.consensus.min_delay;
    net_config.max_delay = scenario.consensus.max_delay;
    net_config.drop_edges = scenario.consensus.drop_edges;
    consensus::SimNetwork net(net_config, n);

    std::vector<consensus::TraceEvent> trace;
    uint64_t steps = 0;
    bool budget_exhausted = false;

    // Build, submit and commit the script, one block time at a time.
    std::map<Address, uint64_t> nonces;
    std::vector<std::pair<size_t, Hash32>> submitted;  // (script index, tx digest)
    consensus::Replica& primary = replicas[0];

    auto drain_commits = [&](consensus::Replica& replica) {
        for (const Block& block : replica.drain_committed()) {
            consensus::TraceEvent ev;
            ev.kind = consensus::TraceEvent::Kind::Commit;
            ev.step = steps;
            ev.from = replica.id();
            ev.to = replica.id();
            ev.seq = block.height;
            ev.digest = block.digest();
            ev.height = block.height;
            trace.push_back(ev);
        }
    };

    size_t index = 0;
    while (index < scenario.script.size() && !budget_exhausted) {
        uint64_t at = scenario.script[index].at;
        for (; index < scenario.script.size() && scenario.script[index].at == at; ++index) {
            const ScriptAction& action = scenario.script[index];
            auto actor_it = participants.find(action.actor);
            if (actor_it == participants.end())
                throw ConfigError({"script[" + std::to_string(index) + "].actor: unknown actor " + action.actor});
            const Participant& actor = actor_it->second;

            auto participant_address = [&](const std::string& label) {
                auto it = participants.find(label);
                if (it == participants.end())
                    throw ConfigError({"script[" + std::to_string(index) + "].target: unknown target " + label});
                return it->second.address;
            };

            FunctionId function = function_for_action(action.kind);
            Bytes payload;
            Wei value = 0;
            switch (action.kind) {
                case ActionKind::Deploy:
                    payload = encode_args(DeployArgs{scenario.timing.t_bid, scenario.timing.t_free});
                    break;
                case ActionKind::Submit: {
                    const OperatorSpec* spec = nullptr;
                    for (const OperatorSpec& s : scenario.operators)
                        if (s.id == action.actor) spec = &s;
                    if (spec == nullptr)
                        throw ConfigError({"script[" + std::to_string(index) + "]: submit requires an operator"});
                    payload = encode_args(SubmitArgs{spec->role, spec->amount_mhz, spec->unit_price_gwei});
                    value = action.value_wei != 0 ? action.value_wei : spec->deposit_wei;
                    break;
                }
                case ActionKind::Resubmit:
                    payload = encode_args(OrderResponseArgs{actor.address, action.unit_price_gwei,
                                                            action.bandwidth_mhz});
                    break;
                case ActionKind::Purchase:
                    payload = encode_args(OrderResponseArgs{participant_address(action.target),
                                                            action.unit_price_gwei, action.bandwidth_mhz});
                    break;
                case ActionKind::PayOrNot:
                    payload = encode_args(PayOrNotArgs{participant_address(action.target), action.executed});
                    break;
                case ActionKind::IncreaseFunds:
                    value = action.value_wei;
                    break;
                case ActionKind::ChangeOwner:
                    payload = encode_args(ChangeOwnerArgs{participant_address(action.target)});
                    break;
                default:
                    break;
            }

            uint64_t nonce = nonces[actor.address]++;
            Transaction tx = make_signed_tx(actor.key, function, std::move(payload), value, nonce, at);
            submitted.emplace_back(index, tx.digest());
            primary.mempool().add(std::move(tx));
        }

        // Propose batches until the mempool drains; each proposal runs to
        // network quiescence so the block stream is seed-independent.
        while (!primary.mempool().empty()) {
            auto proposal = primary.propose(at, scenario.consensus.max_batch);
            if (std::holds_alternative<consensus::ProposeError>(proposal)) {
                result.divergences.push_back("proposal rejected: batch invalid at ledger admission");
                break;
            }
            for (const consensus::Outbound& o : std::get<std::vector<consensus::Outbound>>(proposal))
                net.dispatch(primary.id(), o, trace);
            drain_commits(primary);
            if (consensus::run_until_quiescent(net, replicas, scenario.consensus.max_steps - steps, trace, steps) ==
                consensus::RunStatus::StepBudgetExhausted) {
                budget_exhausted = true;
                break;
            }
        }
    }

    // Report from the first honest replica; collect agreement digests.
    uint32_t canonical_id = 0;
    while (canonical_id < n && !is_honest(canonical_id)) ++canonical_id;
    if (canonical_id == n) canonical_id = 0;  // all byzantine: report anyway
    const consensus::Replica& canonical = replicas[canonical_id];
    const ChainApp& app = canonical.app();

    for (uint32_t i = 0; i < n; ++i)
        if (is_honest(i)) result.honest_state_digests.push_back(replicas[i].app().state_digest());

    std::map<Hash32, const Receipt*> receipts_by_digest;
    for (const Receipt& r : app.receipts()) receipts_by_digest[r.tx_digest] = &r;

    for (const auto& [script_index, digest] : submitted) {
        const ScriptAction& action = scenario.script[script_index];
        ActionOutcome outcome;
        outcome.script_index = script_index;
        auto it = receipts_by_digest.find(digest);
        if (it == receipts_by_digest.end()) {
            outcome.committed = false;
            outcome.as_expected = action.expect == ScriptAction::Expect::Any;
            if (!outcome.as_expected)
                result.divergences.push_back("script[" + std::to_string(script_index) + "] (" + action.actor +
                                             ") never committed");
        } else {
            const Receipt& receipt = *it->second;
            outcome.committed = true;
            outcome.status = receipt.status;
            outcome.revert_reason = receipt.revert_reason;
            switch (action.expect) {
                case ScriptAction::Expect::Ok:
                    outcome.as_expected = receipt.status == TxStatus::Ok;
                    break;
                case ScriptAction::Expect::Revert:
                    outcome.as_expected = receipt.status == TxStatus::Reverted &&
                                          (!action.expect_reason || receipt.revert_reason == action.expect_reason);
                    break;
                case ScriptAction::Expect::Any:
                    outcome.as_expected = true;
                    break;
            }
            if (!outcome.as_expected) {
                std::string got = receipt.status == TxStatus::Ok ? "ok"
                                  : receipt.status == TxStatus::Reverted
                                      ? std::string("revert:") + revert_name(*receipt.revert_reason)
                                      : "fee unpayable";
                result.divergences.push_back("script[" + std::to_string(script_index) + "] (" + action.actor + " " +
                                             function_name(function_for_action(action.kind)) + "): got " + got);
            }
        }
        result.action_outcomes.push_back(outcome);
    }

    // The run digest covers both the replayed application state and the
    // chain-file context, so verify_chain can flag tampering with either.
    ChainFileContext context;
    context.admin_key = admin.key.public_key();
    context.schedule = schedule;
    context.accounts.emplace_back(admin.address, admin.key.public_key(), scenario.admin_balance_wei);
    for (const OperatorSpec& spec : scenario.operators) {
        const Participant& p = participants.at(spec.id);
        context.accounts.emplace_back(p.address, p.key.public_key(), spec.initial_balance_wei);
    }
    result.state_digest = crypto::sha256_concat(app.state_digest(), crypto::sha256(encode_context(context)));
    result.receipts = app.receipts();
    if (app.contract()) {
        result.matches = app.contract()->matches();
        result.events = app.contract()->events();
        for (const auto& [addr, deposit] : app.contract()->deposits()) {
            auto label = labels.find(addr);
            result.final_deposits[label != labels.end() ? label->second : to_hex(addr)] = deposit;
            if (!app.contract()->execute_or_not(addr))
                result.punished.push_back(label != labels.end() ? label->second : to_hex(addr));
        }
    }
    for (const auto& [label, participant] : participants)
        result.final_balances[label] = app.balances().balance(participant.address);
    result.fees_collected = app.balances().fees_collected();
    result.chain_length = canonical.chain().size();
    result.conservation_ok = !app.conservation_failure().has_value();
    if (!result.conservation_ok) result.divergences.push_back(*app.conservation_failure());
    result.consensus_stalled = budget_exhausted;
    result.safety_violation = consensus::audit_safety(trace, is_honest);

    // Settlement report.
    {
        std::ostringstream report;
        report << "MOSS settlement report\n";
        report << "scenario: " << scenario.name << "\n";
        uint64_t tx_count = 0;
        for (const Block& b : canonical.chain().blocks()) tx_count += b.transactions.size();
        report << "chain: " << result.chain_length << " blocks, " << tx_count << " transactions\n";
        report << "consensus: " << (result.consensus_stalled ? "step budget exhausted" : "quiescent")
               << "; safety: " << (result.safety_violation ? "VIOLATION" : "ok")
               << "; conservation: " << (result.conservation_ok ? "ok" : "FAILED") << "\n";

        report << "\nMATCHES (stage seller buyer amount_mhz price_gwei total_wei)\n";
        for (const MatchRecord& m : result.matches) {
            auto name_of = [&](const Address& a) {
                auto it = labels.find(a);
                return it != labels.end() ? it->second : to_hex(a);
            };
            report << trade_stage_name(m.stage) << " " << name_of(m.seller) << " " << name_of(m.buyer) << " "
                   << m.amount_mhz << " " << m.unit_price_gwei << " " << wei_to_string(m.total_wei) << "\n";
        }
        if (result.matches.empty()) report << "(none)\n";

        report << "\nEXTERNAL BALANCES (wei)\n";
        for (const auto& [label, balance] : result.final_balances)
            report << label << " " << wei_to_string(balance) << " (" << wei_to_eth_string(balance) << " eth)\n";

        report << "\nREMAINING DEPOSITS (wei)\n";
        if (result.final_deposits.empty()) report << "(none)\n";
        for (const auto& [label, deposit] : result.final_deposits)
            report << label << " " << wei_to_string(deposit) << "\n";

        report << "\nPUNISHED OPERATORS\n";
        if (result.punished.empty()) report << "(none)\n";
        for (const std::string& label : result.punished) report << label << "\n";

        report << "\nREJECTED CALLS\n";
        bool any_rejected = false;
        for (const Receipt& r : app.receipts()) {
            if (r.status == TxStatus::Ok) continue;
            any_rejected = true;
            auto label = labels.find(r.sender);
            report << "height " << r.block_height << " " << (label != labels.end() ? label->second : to_hex(r.sender))
                   << " " << function_name(r.function) << " -> "
                   << (r.status == TxStatus::FeeUnpayable ? "FeeUnpayable" : revert_name(*r.revert_reason)) << "\n";
        }
        if (!any_rejected) report << "(none)\n";

        report << "\nFEES COLLECTED (wei)\n" << wei_to_string(result.fees_collected) << "\n";
        report << "\nSTATE DIGEST\n" << to_hex(result.state_digest) << "\n";
        if (!result.divergences.empty()) {
            report << "\nDIVERGENCES\n";
            for (const std::string& d : result.divergences) report << d << "\n";
        }
        result.report_text = report.str();
    }

    // Artifacts.
    if (!options.out_dir.empty()) {
        std::filesystem::create_directories(options.out_dir);
        result.chain_path = options.out_dir + "/chain.moss";
        result.events_path = options.out_dir + "/events.jsonl";
        result.trace_path = options.out_dir + "/trace.jsonl";
        write_chain_file(result.chain_path, context, canonical.chain().blocks());

        std::ofstream events_out(result.events_path);
        for (const Event& ev : result.events) events_out << event_to_jsonl(ev) << "\n";

        if (options.write_trace) {
            std::ofstream trace_out(result.trace_path);
            trace_out << consensus::trace_to_jsonl(trace);
        }

        std::string report_path = options.report_path.empty() ? options.out_dir + "/report.txt" : options.report_path;
        std::ofstream report_out(report_path);
        report_out << result.report_text;
    } else if (!options.report_path.empty()) {
        std::ofstream report_out(options.report_path);
        report_out << result.report_text;
    }

    if (result.safety_violation || !result.conservation_ok) result.exit_code = 4;
    else if (!result.divergences.empty()) result.exit_code = 3;
    else if (result.consensus_stalled) result.exit_code = 5;
    else result.exit_code = 0;
    return result;
}

VerifyResult verify_chain(const std::string& chain_path) {
    VerifyResult result;
    LoadedChain loaded;
    try {
        loaded = load_chain_file(chain_path);
    } catch (const ChainFileError& err) {
        result.status = VerifyStatus::CorruptFile;
        result.reason = err.what();
        return result;
    }

    if (loaded.blocks.empty() || loaded.blocks.front().digest() != Block::genesis().digest()) {
        result.status = VerifyStatus::VerificationFailed;
        result.failed_height = 0;
        result.reason = "missing or non-canonical genesis block";
        return result;
    }

    std::vector<std::pair<Address, crypto::PublicKey>> members;
    for (const auto& [addr, key, balance] : loaded.context.accounts) members.emplace_back(addr, key);
    IdentityRegistry registry = IdentityRegistry::from_roster(loaded.context.admin_key, members);

    ChainApp app(crypto::address_of(loaded.context.admin_key), loaded.context.schedule);
    for (const auto& [addr, key, balance] : loaded.context.accounts) app.set_initial_balance(addr, balance);

    Chain chain;
    for (size_t i = 1; i < loaded.blocks.size(); ++i) {
        const Block& block = loaded.blocks[i];
        if (auto err = chain.append_block(block, registry)) {
            result.status = VerifyStatus::VerificationFailed;
            result.failed_height = block.height;
            result.reason = chain_error_name(*err);
            return result;
        }
        try {
            app.apply_block(block);
        } catch (const std::exception& err) {
            result.status = VerifyStatus::VerificationFailed;
            result.failed_height = block.height;
            result.reason = std::string("replay error: ") + err.what();
            return result;
        }
        if (app.conservation_failure()) {
            result.status = VerifyStatus::VerificationFailed;
            result.failed_height = block.height;
            result.reason = *app.conservation_failure();
            return result;
        }
    }

    result.status = VerifyStatus::Ok;
    result.state_digest =
        crypto::sha256_concat(app.state_digest(), crypto::sha256(encode_context(loaded.context)));
    result.chain_length = loaded.blocks.size();
    return result;
}

}  // namespace moss
