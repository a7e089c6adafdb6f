#include "moss/chain_app.hpp"

namespace moss {

namespace {

bool is_payable(FunctionId f) { return f == FunctionId::BidOrAskSubmit || f == FunctionId::IncreaseFunds; }

const std::vector<Event> kNoEvents;

}  // namespace

ChainApp::ChainApp(Address admin, GasSchedule schedule) : admin_(admin), schedule_(std::move(schedule)) {}

void ChainApp::set_initial_balance(const Address& account, Wei wei) { balances_.credit(account, wei); }

const std::vector<Event>& ChainApp::events() const { return contract_ ? contract_->events() : kNoEvents; }

Wei ChainApp::total_money() const {
    Wei total = balances_.total_supply();
    if (contract_) total += contract_->contract_held_wei();
    return total;
}

void ChainApp::apply_block(const Block& block) {
    if (!expected_total_) expected_total_ = total_money();
    if (contract_) contract_->set_block_context(block.height);
    for (const Transaction& tx : block.transactions) receipts_.push_back(apply_tx(tx, block));
    applied_height_ = block.height;
    last_block_digest_ = block.digest();
    if (total_money() != *expected_total_ && !conservation_failure_) {
        conservation_failure_ = "money supply changed at height " + std::to_string(block.height) + ": expected " +
                                wei_to_string(*expected_total_) + ", got " + wei_to_string(total_money());
    }
}

Receipt ChainApp::apply_tx(const Transaction& tx, const Block& block) {
    Receipt receipt;
    receipt.tx_digest = tx.digest();
    receipt.block_height = block.height;
    receipt.sender = tx.sender;
    receipt.function = tx.function;

    uint64_t gas = 0;
    try {
        gas = schedule_.gas_for(tx);
    } catch (const DecodeError&) {
        gas = schedule_.per_function_gas.at(tx.function);
    }
    Wei fee = ether_cost(gas, schedule_.gas_price);
    receipt.gas_used = gas;
    receipt.fee_wei = fee;

    // The fee is charged regardless of the call outcome; an account that
    // cannot even pay the fee leaves no trace in contract state.
    if (!balances_.charge_fee(tx.sender, fee)) {
        receipt.status = TxStatus::FeeUnpayable;
        receipt.fee_wei = 0;
        return receipt;
    }

    if (tx.value_wei > 0 && !is_payable(tx.function)) {
        receipt.status = TxStatus::Reverted;
        receipt.revert_reason = Revert::NotPayable;
        return receipt;
    }
    if (tx.value_wei > 0 && balances_.balance(tx.sender) < tx.value_wei) {
        receipt.status = TxStatus::Reverted;
        receipt.revert_reason = Revert::InsufficientBalance;
        return receipt;
    }

    CallOutcome outcome;
    try {
        outcome = dispatch(tx, block);
    } catch (const DecodeError&) {
        outcome = CallOutcome::reverted(Revert::BadArguments);
    }

    if (!outcome.ok()) {
        receipt.status = TxStatus::Reverted;
        receipt.revert_reason = outcome.revert;
        return receipt;
    }

    if (tx.value_wei > 0) balances_.debit(tx.sender, tx.value_wei);
    for (const Payout& payout : outcome.payouts) balances_.credit(payout.to, payout.amount_wei);
    receipt.status = TxStatus::Ok;
    receipt.boolean_result = outcome.boolean;
    return receipt;
}

CallOutcome ChainApp::dispatch(const Transaction& tx, const Block& block) {
    const uint64_t now = block.timestamp;

    if (tx.function == FunctionId::Deploy) {
        if (tx.sender != admin_) return CallOutcome::reverted(Revert::NotAdministrator);
        if (contract_) return CallOutcome::reverted(Revert::AlreadyDeployed);
        DeployArgs args = decode_deploy_args(tx.payload);
        contract_.emplace(tx.sender, args.t_bid_seconds, args.t_free_seconds, now);
        contract_->set_block_context(block.height);
        return CallOutcome::success();
    }

    if (!contract_) return CallOutcome::reverted(Revert::NoContract);

    switch (tx.function) {
        case FunctionId::BidOrAskSubmit: {
            SubmitArgs args = decode_submit_args(tx.payload);
            return contract_->bid_or_ask_submit(tx.sender, args.role, args.bandwidth_mhz, args.unit_price_gwei,
                                                tx.value_wei, now);
        }
        case FunctionId::RegistrationEnd:
            return contract_->registration_end(now);
        case FunctionId::SortAskByIncrease:
            return contract_->sort_ask_by_increase(tx.sender);
        case FunctionId::SortBidByDecrease:
            return contract_->sort_bid_by_decrease(tx.sender);
        case FunctionId::DoubleAuction:
            return contract_->double_auction(tx.sender);
        case FunctionId::FreeTradeBegin:
            return contract_->free_trade_begin(tx.sender, now);
        case FunctionId::OrderResponse: {
            OrderResponseArgs args = decode_order_response_args(tx.payload);
            return contract_->order_response(tx.sender, args.target, args.unit_price_gwei, args.bandwidth_mhz, now);
        }
        case FunctionId::DeleteOrder:
            return contract_->delete_order(tx.sender);
        case FunctionId::MarketEnd:
            return contract_->market_end(now);
        case FunctionId::PayOrNot: {
            PayOrNotArgs args = decode_pay_or_not_args(tx.payload);
            return contract_->pay_or_not(tx.sender, args.operator_address, args.executed);
        }
        case FunctionId::IncreaseFunds:
            return contract_->increase_funds(tx.sender, tx.value_wei);
        case FunctionId::Withdraw:
            return contract_->withdraw(tx.sender);
        case FunctionId::ChangeOwner: {
            ChangeOwnerArgs args = decode_change_owner_args(tx.payload);
            return contract_->change_owner(tx.sender, args.new_owner);
        }
        case FunctionId::SelfDestruct:
            return contract_->self_destruct(tx.sender);
        case FunctionId::Deploy:
            break;  // handled above
    }
    return CallOutcome::reverted(Revert::BadArguments);
}

Hash32 ChainApp::state_digest() const {
    Encoder e;
    e.put_u64(applied_height_);
    e.put_hash(last_block_digest_);
    e.put_u128(balances_.fees_collected());
    e.put_u32(static_cast<uint32_t>(balances_.balances().size()));
    for (const auto& [addr, balance] : balances_.balances()) {
        e.put_address(addr);
        e.put_u128(balance);
    }
    e.put_u32(static_cast<uint32_t>(receipts_.size()));
    for (const Receipt& r : receipts_) {
        e.put_hash(r.tx_digest);
        e.put_u8(static_cast<uint8_t>(r.status));
        e.put_u8(r.revert_reason ? static_cast<uint8_t>(*r.revert_reason) + 1 : 0);
        e.put_u64(r.gas_used);
        e.put_u128(r.fee_wei);
    }
    e.put_bool(contract_.has_value());
    if (contract_) contract_->encode_state(e);
    return crypto::sha256(e.bytes());
}

}  // namespace moss
