#pragma once

#include "moss/tx.hpp"

#include <map>

namespace moss {

// Gas price as an exact rational number of Gwei per gas unit, normalized to
// an integer count of wei per gas. 4.3 Gwei/gas = 4,300,000,000 wei/gas.
// Construction rejects prices that are not a whole number of wei.
struct GasPrice {
    uint64_t wei_per_gas = 0;

    static GasPrice from_gwei_rational(uint64_t numerator, uint64_t denominator);
    // "4.3", "0.1", "12": decimal Gwei with up to 9 fractional digits.
    static GasPrice from_gwei_string(std::string_view s);

    auto operator<=>(const GasPrice&) const = default;
};

// Ether_consumption = Gas_cost * Gas_price, exact in wei.
Wei ether_cost(uint64_t gas_units, GasPrice price);

// Flat per-function gas amounts. orderResponse carries two entries: the
// buyer purchase path and the seller resubmit path are metered differently.
struct GasSchedule {
    std::map<FunctionId, uint64_t> per_function_gas;
    uint64_t order_response_seller_gas = 0;  // resubmit path override
    GasPrice gas_price;

    // Defaults measured on the reference contract deployment.
    static GasSchedule published_default();

    uint64_t gas_for(const Transaction& tx) const;
    Wei fee_for(const Transaction& tx) const { return ether_cost(gas_for(tx), gas_price); }
};

// External account balances plus the fee sink. Fees are charged per
// transaction in committed order, also for transactions that revert.
class BalanceBook {
  public:
    void credit(const Address& account, Wei amount) { balances_[account] += amount; }
    bool debit(const Address& account, Wei amount);  // false if underfunded, balance untouched
    Wei balance(const Address& account) const;

    // Moves the fee into the sink; false (and no mutation) if unpayable.
    bool charge_fee(const Address& account, Wei fee);

    Wei fees_collected() const { return fees_collected_; }
    Wei total_supply() const;  // balances + collected fees
    const std::map<Address, Wei>& balances() const { return balances_; }

  private:
    std::map<Address, Wei> balances_;
    Wei fees_collected_ = 0;
};

}  // namespace moss
