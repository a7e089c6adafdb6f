#pragma once

// Randomized whole-round scenarios for the conservation and replay suites.
// Parameter ranges mirror scenarios/fuzz_template.json. Scripts are sloppy
// on purpose: actions may revert (expect=any); money conservation and
// replay determinism must hold regardless.

#include "moss/scenario.hpp"

#include <random>

namespace moss::testing {

inline Scenario fuzz_scenario(uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&rng](uint64_t lo, uint64_t hi) { return lo + rng() % (hi - lo + 1); };

    Scenario sc;
    sc.name = "fuzz-" + std::to_string(seed);
    sc.admin_key_label = "admin";
    sc.timing = {1000, 600, 1700, 600, 2400, 3000};
    sc.consensus.replicas = 4;
    sc.consensus.seed = rng();
    sc.consensus.min_delay = 1;
    sc.consensus.max_delay = 4;

    size_t sellers = pick(1, 4), buyers = pick(1, 4);
    std::vector<std::string> seller_ids, buyer_ids, all_ids;
    for (size_t i = 0; i < sellers + buyers; ++i) {
        OperatorSpec spec;
        bool seller = i < sellers;
        spec.id = (seller ? "S" : "B") + std::to_string(i);
        spec.key_label = sc.name + "-" + spec.id;
        spec.role = seller ? Role::Seller : Role::Buyer;
        spec.amount_mhz = static_cast<uint32_t>(pick(1, 20));
        // One op in ten bids at prices where a full deal outgrows a small
        // deposit, driving the underfunded paths through the pipeline.
        spec.unit_price_gwei = rng() % 10 == 0 ? pick(50'000'000, 500'000'000) : pick(1, 100);
        spec.required_bandwidth_mhz = pick(0, 10);
        spec.total_bandwidth_mhz = spec.amount_mhz + spec.required_bandwidth_mhz + pick(0, 5);
        spec.initial_balance_wei = pick(50, 100) * kWeiPerEth;
        spec.deposit_wei = pick(1, 2) * kWeiPerEth;
        (seller ? seller_ids : buyer_ids).push_back(spec.id);
        all_ids.push_back(spec.id);
        sc.operators.push_back(std::move(spec));
    }

    std::map<std::string, uint64_t> posted_price;
    for (const OperatorSpec& spec : sc.operators) posted_price[spec.id] = spec.unit_price_gwei;

    auto act = [&sc](uint64_t at, const std::string& actor, ActionKind kind) -> ScriptAction& {
        ScriptAction action;
        action.at = at;
        action.actor = actor;
        action.kind = kind;
        action.expect = ScriptAction::Expect::Any;
        sc.script.push_back(action);
        return sc.script.back();
    };

    act(1000, "admin", ActionKind::Deploy).expect = ScriptAction::Expect::Ok;
    uint64_t ts = 1010;
    for (const std::string& id : all_ids) {
        if (rng() % 8 == 0) continue;  // some operators sit the round out
        act(ts, id, ActionKind::Submit);
        ts += 10;
    }
    act(1601, "admin", ActionKind::RegistrationEnd).expect = ScriptAction::Expect::Ok;
    act(1602, "admin", ActionKind::SortAsks).expect = ScriptAction::Expect::Ok;
    act(1603, "admin", ActionKind::SortBids).expect = ScriptAction::Expect::Ok;
    act(1604, "admin", ActionKind::DoubleAuction).expect = ScriptAction::Expect::Ok;
    act(1700, "admin", ActionKind::FreeTradeBegin).expect = ScriptAction::Expect::Ok;

    ts = 1710;
    size_t free_actions = pick(0, 6);
    for (size_t i = 0; i < free_actions; ++i, ts += 10) {
        switch (rng() % 4) {
            case 0: {
                const std::string& id = seller_ids[rng() % seller_ids.size()];
                ScriptAction& a = act(ts, id, ActionKind::Resubmit);
                a.unit_price_gwei = pick(1, 100);
                a.bandwidth_mhz = static_cast<uint32_t>(pick(1, 20));
                posted_price[id] = a.unit_price_gwei;
                break;
            }
            case 1: {
                const std::string& buyer = buyer_ids[rng() % buyer_ids.size()];
                const std::string& target = seller_ids[rng() % seller_ids.size()];
                ScriptAction& a = act(ts, buyer, ActionKind::Purchase);
                a.target = target;
                a.unit_price_gwei = posted_price[target];
                a.bandwidth_mhz = static_cast<uint32_t>(pick(1, 20));
                break;
            }
            case 2:
                act(ts, all_ids[rng() % all_ids.size()], ActionKind::DeleteOrder);
                break;
            case 3: {
                ScriptAction& a = act(ts, all_ids[rng() % all_ids.size()], ActionKind::IncreaseFunds);
                a.value_wei = pick(1, 20) * (kWeiPerEth / 10);
                break;
            }
        }
    }

    act(2301, "admin", ActionKind::MarketEnd).expect = ScriptAction::Expect::Ok;
    uint64_t punish_ts = 2500;
    for (const std::string& id : all_ids) {
        if (rng() % 4 == 0) {
            ScriptAction& a = act(punish_ts++, "admin", ActionKind::PayOrNot);
            a.target = id;
            a.executed = false;
        }
    }
    uint64_t withdraw_ts = 3001;
    for (const std::string& id : all_ids) act(withdraw_ts++, id, ActionKind::Withdraw);
    if (rng() % 2 == 0) act(3100, "admin", ActionKind::SelfDestruct);

    return sc;
}

}  // namespace moss::testing
