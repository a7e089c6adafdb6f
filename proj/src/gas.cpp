#include "moss/gas.hpp"

namespace moss {

GasPrice GasPrice::from_gwei_rational(uint64_t numerator, uint64_t denominator) {
    if (numerator == 0 || denominator == 0) throw std::invalid_argument("gas price must be positive");
    unsigned __int128 wei = static_cast<unsigned __int128>(numerator) * kWeiPerGwei;
    if (wei % denominator != 0) throw std::invalid_argument("gas price is not a whole number of wei per gas");
    unsigned __int128 per_gas = wei / denominator;
    if (per_gas > ~0ull) throw std::overflow_error("gas price too large");
    return GasPrice{static_cast<uint64_t>(per_gas)};
}

GasPrice GasPrice::from_gwei_string(std::string_view s) {
    auto dot = s.find('.');
    std::string_view whole = dot == std::string_view::npos ? s : s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw std::invalid_argument("empty gas price");
    if (frac.size() > 9) throw std::invalid_argument("gas price finer than 1 wei per gas");
    uint64_t numerator = 0;
    uint64_t denominator = 1;
    for (char c : whole) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad gas price digit");
        numerator = numerator * 10 + static_cast<uint64_t>(c - '0');
    }
    for (char c : frac) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad gas price digit");
        numerator = numerator * 10 + static_cast<uint64_t>(c - '0');
        denominator *= 10;
    }
    return from_gwei_rational(numerator, denominator);
}

Wei ether_cost(uint64_t gas_units, GasPrice price) {
    return static_cast<Wei>(gas_units) * price.wei_per_gas;
}

GasSchedule GasSchedule::published_default() {
    GasSchedule s;
    s.per_function_gas = {
        {FunctionId::Deploy, 4767204},
        {FunctionId::BidOrAskSubmit, 216416},
        {FunctionId::RegistrationEnd, 21799},
        {FunctionId::SortAskByIncrease, 70696},
        {FunctionId::SortBidByDecrease, 116557},
        {FunctionId::DoubleAuction, 368357},
        {FunctionId::FreeTradeBegin, 42413},
        {FunctionId::OrderResponse, 24277},  // buyer purchase path
        {FunctionId::DeleteOrder, 21229},
        {FunctionId::MarketEnd, 21776},
        {FunctionId::PayOrNot, 29018},
        {FunctionId::IncreaseFunds, 26757},
        {FunctionId::Withdraw, 22188},
        {FunctionId::ChangeOwner, 28811},
        {FunctionId::SelfDestruct, 13495},
    };
    s.order_response_seller_gas = 35085;
    s.gas_price = GasPrice::from_gwei_rational(43, 10);
    return s;
}

uint64_t GasSchedule::gas_for(const Transaction& tx) const {
    if (tx.function == FunctionId::OrderResponse) {
        // The path is decidable from the arguments alone, so reverted calls
        // are charged the same as successful ones.
        auto args = decode_order_response_args(tx.payload);
        if (args.target == tx.sender) return order_response_seller_gas;
    }
    auto it = per_function_gas.find(tx.function);
    if (it == per_function_gas.end()) throw std::out_of_range("no gas entry for function");
    return it->second;
}

bool BalanceBook::debit(const Address& account, Wei amount) {
    if (amount == 0) return true;
    auto it = balances_.find(account);
    if (it == balances_.end() || it->second < amount) return false;
    it->second -= amount;
    return true;
}

Wei BalanceBook::balance(const Address& account) const {
    auto it = balances_.find(account);
    return it == balances_.end() ? 0 : it->second;
}

bool BalanceBook::charge_fee(const Address& account, Wei fee) {
    if (!debit(account, fee)) return false;
    fees_collected_ += fee;
    return true;
}

Wei BalanceBook::total_supply() const {
    Wei total = fees_collected_;
    for (const auto& [addr, bal] : balances_) total += bal;
    return total;
}

}  // namespace moss
