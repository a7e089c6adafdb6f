#pragma once

#include "moss/codec.hpp"
#include "moss/crypto.hpp"

#include <optional>

namespace moss {

// Every on-chain action is a call to one of these. Deploy is the contract
// creation marker; the rest mirror the contract surface one to one.
enum class FunctionId : uint8_t {
    Deploy = 0,
    BidOrAskSubmit = 1,
    RegistrationEnd = 2,
    SortAskByIncrease = 3,
    SortBidByDecrease = 4,
    DoubleAuction = 5,
    FreeTradeBegin = 6,
    OrderResponse = 7,
    DeleteOrder = 8,
    MarketEnd = 9,
    PayOrNot = 10,
    IncreaseFunds = 11,
    Withdraw = 12,
    ChangeOwner = 13,
    SelfDestruct = 14,
};

const char* function_name(FunctionId f);
std::optional<FunctionId> function_from_name(std::string_view name);

enum class Role : uint8_t { Seller = 0, Buyer = 1 };

inline const char* role_name(Role r) { return r == Role::Seller ? "seller" : "buyer"; }

// Call argument payloads, one per function that takes arguments.
struct DeployArgs {
    uint64_t t_bid_seconds = 0;
    uint64_t t_free_seconds = 0;
};
struct SubmitArgs {
    Role role = Role::Seller;
    uint32_t bandwidth_mhz = 0;
    uint64_t unit_price_gwei = 0;
};
struct OrderResponseArgs {
    Address target;                // == sender for a seller resubmit
    uint64_t unit_price_gwei = 0;
    uint32_t bandwidth_mhz = 0;
};
struct PayOrNotArgs {
    Address operator_address;
    bool executed = true;
};
struct ChangeOwnerArgs {
    Address new_owner;
};

Bytes encode_args(const DeployArgs& a);
Bytes encode_args(const SubmitArgs& a);
Bytes encode_args(const OrderResponseArgs& a);
Bytes encode_args(const PayOrNotArgs& a);
Bytes encode_args(const ChangeOwnerArgs& a);

DeployArgs decode_deploy_args(std::span<const uint8_t> payload);
SubmitArgs decode_submit_args(std::span<const uint8_t> payload);
OrderResponseArgs decode_order_response_args(std::span<const uint8_t> payload);
PayOrNotArgs decode_pay_or_not_args(std::span<const uint8_t> payload);
ChangeOwnerArgs decode_change_owner_args(std::span<const uint8_t> payload);

struct Transaction {
    Address sender;
    FunctionId function = FunctionId::RegistrationEnd;
    Bytes payload;              // canonical encoding of the call arguments
    Wei value_wei = 0;          // attached currency (deposit / top-up)
    uint64_t nonce = 0;         // per-sender counter, consecutive from 0
    uint64_t timestamp = 0;     // logical submission time, seconds
    crypto::Signature signature{};

    // Everything except the signature; this is what gets signed.
    Bytes signing_bytes() const;
    // Full wire encoding including the signature.
    Bytes encode() const;
    static Transaction decode(std::span<const uint8_t> data);

    // Merkle leaf / identity digest over the full encoding, so any byte
    // flip (signature included) changes the transaction digest.
    Hash32 digest() const;
};

// Builds and signs a transaction in one step.
Transaction make_signed_tx(const crypto::KeyPair& key, FunctionId function, Bytes payload, Wei value_wei,
                           uint64_t nonce, uint64_t timestamp);

}  // namespace moss
