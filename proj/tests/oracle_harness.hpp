#pragma once

// Drives one auction instance through the production contract and maps the
// result back into oracle terms, for equivalence checks against the
// brute-force reference.

#include "auction_oracle.hpp"
#include "moss/contract.hpp"

#include <random>

namespace moss::testing {

inline Address tagged_address(bool seller, int tag) {
    Address a{};
    a.bytes[0] = seller ? 0xA0 : 0xB0;
    a.bytes[19] = static_cast<uint8_t>(tag);
    return a;
}

inline std::vector<oracle::OracleMatch> contract_match(const oracle::OracleInstance& instance) {
    Address admin{};
    admin.bytes[18] = 0xEE;
    MossContract contract(admin, 600, 600, 1000);
    uint64_t ts = 1000;
    for (const auto& ask : instance.asks) {
        auto out = contract.bid_or_ask_submit(tagged_address(true, ask.tag), Role::Seller, ask.bandwidth_mhz,
                                              ask.price_gwei, kWeiPerEth, ++ts);
        if (!out.ok()) throw std::logic_error("ask submission rejected in harness");
    }
    for (const auto& bid : instance.bids) {
        auto out = contract.bid_or_ask_submit(tagged_address(false, bid.tag), Role::Buyer, bid.bandwidth_mhz,
                                              bid.price_gwei, kWeiPerEth, ++ts);
        if (!out.ok()) throw std::logic_error("bid submission rejected in harness");
    }
    contract.registration_end(1601);
    contract.sort_ask_by_increase(admin);
    contract.sort_bid_by_decrease(admin);
    auto out = contract.double_auction(admin);
    if (!out.ok()) throw std::logic_error("double auction rejected in harness");

    std::vector<oracle::OracleMatch> matches;
    for (const MatchRecord& m : contract.matches())
        matches.push_back({m.seller.bytes[19], m.buyer.bytes[19], m.amount_mhz, m.unit_price_gwei});
    return matches;
}

// <= 8 orders per side, prices in [1, 100] Gwei, bandwidth in [1, 20] MHz.
inline oracle::OracleInstance random_instance(std::mt19937_64& rng) {
    oracle::OracleInstance instance;
    size_t sellers = 1 + rng() % 8, buyers = 1 + rng() % 8;
    for (size_t i = 0; i < sellers; ++i)
        instance.asks.push_back({1 + rng() % 100, static_cast<uint32_t>(1 + rng() % 20), static_cast<int>(i)});
    for (size_t i = 0; i < buyers; ++i)
        instance.bids.push_back({1 + rng() % 100, static_cast<uint32_t>(1 + rng() % 20), static_cast<int>(i)});
    return instance;
}

}  // namespace moss::testing
