#include "moss/tx.hpp"

namespace moss {

const char* function_name(FunctionId f) {
    switch (f) {
        case FunctionId::Deploy: return "Deploy";
        case FunctionId::BidOrAskSubmit: return "BidOrAskSubmit";
        case FunctionId::RegistrationEnd: return "RegistrationEnd";
        case FunctionId::SortAskByIncrease: return "sortAskByIncrease";
        case FunctionId::SortBidByDecrease: return "sortBidByDecrease";
        case FunctionId::DoubleAuction: return "DoubleAuction";
        case FunctionId::FreeTradeBegin: return "freeTradeBegin";
        case FunctionId::OrderResponse: return "orderResponse";
        case FunctionId::DeleteOrder: return "deleteOrder";
        case FunctionId::MarketEnd: return "MarketEnd";
        case FunctionId::PayOrNot: return "payORnot";
        case FunctionId::IncreaseFunds: return "increaseFunds";
        case FunctionId::Withdraw: return "withdraw";
        case FunctionId::ChangeOwner: return "changeOwner";
        case FunctionId::SelfDestruct: return "selfDestruct";
    }
    return "unknown";
}

std::optional<FunctionId> function_from_name(std::string_view name) {
    for (int i = 0; i <= static_cast<int>(FunctionId::SelfDestruct); ++i) {
        auto f = static_cast<FunctionId>(i);
        if (name == function_name(f)) return f;
    }
    return std::nullopt;
}

Bytes encode_args(const DeployArgs& a) {
    Encoder e;
    e.put_u64(a.t_bid_seconds);
    e.put_u64(a.t_free_seconds);
    return e.take();
}

Bytes encode_args(const SubmitArgs& a) {
    Encoder e;
    e.put_u8(static_cast<uint8_t>(a.role));
    e.put_u32(a.bandwidth_mhz);
    e.put_u64(a.unit_price_gwei);
    return e.take();
}

Bytes encode_args(const OrderResponseArgs& a) {
    Encoder e;
    e.put_address(a.target);
    e.put_u64(a.unit_price_gwei);
    e.put_u32(a.bandwidth_mhz);
    return e.take();
}

Bytes encode_args(const PayOrNotArgs& a) {
    Encoder e;
    e.put_address(a.operator_address);
    e.put_bool(a.executed);
    return e.take();
}

Bytes encode_args(const ChangeOwnerArgs& a) {
    Encoder e;
    e.put_address(a.new_owner);
    return e.take();
}

DeployArgs decode_deploy_args(std::span<const uint8_t> payload) {
    Decoder d(payload);
    DeployArgs a;
    a.t_bid_seconds = d.get_u64();
    a.t_free_seconds = d.get_u64();
    d.expect_done();
    return a;
}

SubmitArgs decode_submit_args(std::span<const uint8_t> payload) {
    Decoder d(payload);
    SubmitArgs a;
    uint8_t role = d.get_u8();
    if (role > 1) throw DecodeError("bad role");
    a.role = static_cast<Role>(role);
    a.bandwidth_mhz = d.get_u32();
    a.unit_price_gwei = d.get_u64();
    d.expect_done();
    return a;
}

OrderResponseArgs decode_order_response_args(std::span<const uint8_t> payload) {
    Decoder d(payload);
    OrderResponseArgs a;
    a.target = d.get_address();
    a.unit_price_gwei = d.get_u64();
    a.bandwidth_mhz = d.get_u32();
    d.expect_done();
    return a;
}

PayOrNotArgs decode_pay_or_not_args(std::span<const uint8_t> payload) {
    Decoder d(payload);
    PayOrNotArgs a;
    a.operator_address = d.get_address();
    a.executed = d.get_bool();
    d.expect_done();
    return a;
}

ChangeOwnerArgs decode_change_owner_args(std::span<const uint8_t> payload) {
    Decoder d(payload);
    ChangeOwnerArgs a;
    a.new_owner = d.get_address();
    d.expect_done();
    return a;
}

Bytes Transaction::signing_bytes() const {
    Encoder e;
    e.put_address(sender);
    e.put_u8(static_cast<uint8_t>(function));
    e.put_bytes(payload);
    e.put_u128(value_wei);
    e.put_u64(nonce);
    e.put_u64(timestamp);
    return e.take();
}

Bytes Transaction::encode() const {
    Bytes out = signing_bytes();
    out.insert(out.end(), signature.begin(), signature.end());
    return out;
}

Transaction Transaction::decode(std::span<const uint8_t> data) {
    Decoder d(data);
    Transaction tx;
    tx.sender = d.get_address();
    uint8_t f = d.get_u8();
    if (f > static_cast<uint8_t>(FunctionId::SelfDestruct)) throw DecodeError("bad function id");
    tx.function = static_cast<FunctionId>(f);
    tx.payload = d.get_bytes();
    tx.value_wei = d.get_u128();
    tx.nonce = d.get_u64();
    tx.timestamp = d.get_u64();
    if (d.remaining() != tx.signature.size()) throw DecodeError("bad signature length");
    for (auto& b : tx.signature) b = d.get_u8();
    return tx;
}

Hash32 Transaction::digest() const { return crypto::sha256(encode()); }

Transaction make_signed_tx(const crypto::KeyPair& key, FunctionId function, Bytes payload, Wei value_wei,
                           uint64_t nonce, uint64_t timestamp) {
    Transaction tx;
    tx.sender = key.address();
    tx.function = function;
    tx.payload = std::move(payload);
    tx.value_wei = value_wei;
    tx.nonce = nonce;
    tx.timestamp = timestamp;
    Bytes msg = tx.signing_bytes();
    tx.signature = key.sign(msg);
    return tx;
}

}  // namespace moss
