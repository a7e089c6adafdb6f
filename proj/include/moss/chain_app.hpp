#pragma once

#include "moss/chain.hpp"
#include "moss/contract.hpp"
#include "moss/gas.hpp"

namespace moss {

enum class TxStatus : uint8_t { Ok = 0, Reverted = 1, FeeUnpayable = 2 };

struct Receipt {
    Hash32 tx_digest{};
    uint64_t block_height = 0;
    Address sender;
    FunctionId function = FunctionId::RegistrationEnd;
    TxStatus status = TxStatus::Ok;
    std::optional<Revert> revert_reason;
    uint64_t gas_used = 0;
    Wei fee_wei = 0;
    std::optional<bool> boolean_result;
};

// Deterministic application of committed blocks: per-transaction gas
// charging against external balances, value transfer into the contract,
// dispatch into the MOSS state machine, payouts back out. Identical block
// sequences produce identical state on every replica, which is what makes
// the contract safe to run under consensus.
class ChainApp {
  public:
    ChainApp(Address admin, GasSchedule schedule);

    void set_initial_balance(const Address& account, Wei wei);

    // Blocks must arrive in committed order; the caller (chain owner) has
    // already verified them against the ledger rules.
    void apply_block(const Block& block);

    const BalanceBook& balances() const { return balances_; }
    const MossContract* contract() const { return contract_ ? &*contract_ : nullptr; }
    const std::vector<Receipt>& receipts() const { return receipts_; }
    const std::vector<Event>& events() const;
    uint64_t applied_height() const { return applied_height_; }

    // balances + fees + contract-held deposits; constant across a run.
    Wei total_money() const;
    // Set after the first block: any later total that differs trips this.
    const std::optional<std::string>& conservation_failure() const { return conservation_failure_; }

    // Digest over the full application state plus the last applied block
    // digest; two nodes agree on history iff these match.
    Hash32 state_digest() const;

  private:
    Receipt apply_tx(const Transaction& tx, const Block& block);
    CallOutcome dispatch(const Transaction& tx, const Block& block);

    Address admin_;
    GasSchedule schedule_;
    BalanceBook balances_;
    std::optional<MossContract> contract_;
    std::vector<Receipt> receipts_;
    uint64_t applied_height_ = 0;
    Hash32 last_block_digest_{};
    std::optional<Wei> expected_total_;
    std::optional<std::string> conservation_failure_;
};

}  // namespace moss
