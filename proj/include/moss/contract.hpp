#pragma once

#include "moss/codec.hpp"
#include "moss/tx.hpp"

#include <map>
#include <optional>

namespace moss {

// Revert reasons. A reverted call leaves the contract state untouched and
// moves no deposits; the gas fee is still charged by the executor.
enum class Revert : uint8_t {
    NotAdministrator,
    RegistrationClosed,
    InsufficientDeposit,
    DuplicateRegistration,
    ZeroQuantity,
    WrongPhase,
    AlreadyAuctioned,
    BooksNotSorted,
    TooEarly,
    MarketNotOpened,
    MarketClosed,
    UnknownTarget,
    PriceMismatch,
    BuyerUnderfunded,
    NoOrder,
    UnknownOperator,
    NotRegistered,
    ZeroValue,
    InvalidOp,
    NothingToWithdraw,
    ContractDestroyed,
    NotPayable,
    // Executor-level rejections:
    NoContract,
    AlreadyDeployed,
    BadArguments,
    InsufficientBalance,
};

const char* revert_name(Revert r);

enum class Phase : uint8_t { Registration, AuctionReady, Auctioned, FreeTrading, Cleared, Destroyed };

const char* phase_name(Phase p);

enum class TradeStage : uint8_t { Auction = 0, FreeMarket = 1 };

const char* trade_stage_name(TradeStage s);

// One operator's registered ask or bid. Quantity is decremented as trades
// settle; price only changes through a free-market resubmit.
struct Order {
    Address owner;
    Role role = Role::Seller;
    uint64_t unit_price_gwei = 0;
    uint32_t bandwidth_mhz = 0;

    bool operator==(const Order&) const = default;
};

struct MatchRecord {
    Address seller;
    Address buyer;
    uint32_t amount_mhz = 0;
    uint64_t unit_price_gwei = 0;
    TradeStage stage = TradeStage::Auction;
    Wei total_wei = 0;  // amount * price * 1e9
};

enum class EventKind : uint8_t {
    LogRegisterOp,      // address, role, bandwidth, price
    LogDealRecord,      // seller, buyer, amount, price
    LogFreeMarketOrder, // address, price, bandwidth
    LogBuyerSkipped,    // buyer dropped mid-auction: deposit below the deal money
};

const char* event_kind_name(EventKind k);

struct Event {
    EventKind kind = EventKind::LogRegisterOp;
    uint64_t block_height = 0;
    uint32_t index = 0;  // intra-block emission order
    Address address_a;   // registrant / seller / skipped buyer
    Address address_b;   // buyer on deal records
    Role role = Role::Seller;
    uint64_t unit_price_gwei = 0;
    uint32_t bandwidth_mhz = 0;
};

struct Payout {
    Address to;
    Wei amount_wei = 0;
};

// Uniform result of a contract call. `payouts` lists deposit money leaving
// the contract (withdraw, self-destruct refunds); the executor credits it
// to external balances.
struct CallOutcome {
    std::optional<Revert> revert;
    std::optional<bool> boolean;  // RegistrationEnd / MarketEnd answer
    std::vector<Payout> payouts;

    bool ok() const { return !revert.has_value(); }
    static CallOutcome reverted(Revert r) { return CallOutcome{r, std::nullopt, {}}; }
    static CallOutcome success() { return CallOutcome{}; }
};

// The MOSS trading state machine. Pure and deterministic: state advances
// only through these calls, applied in committed block order with `now`
// taken from the containing block's timestamp. One instance runs one round
// of spectrum sharing.
class MossContract {
  public:
    // t0 is the deployment block's timestamp. The bidding window is
    // [t0, t0+t_bid]; the free-trading window is [t1, t1+t_free] once opened.
    MossContract(Address owner, uint64_t t_bid_seconds, uint64_t t_free_seconds, uint64_t now);

    CallOutcome bid_or_ask_submit(const Address& sender, Role role, uint32_t bandwidth_mhz,
                                  uint64_t unit_price_gwei, Wei value_wei, uint64_t now);
    CallOutcome registration_end(uint64_t now);
    CallOutcome sort_ask_by_increase(const Address& sender);
    CallOutcome sort_bid_by_decrease(const Address& sender);
    CallOutcome double_auction(const Address& sender);
    CallOutcome free_trade_begin(const Address& sender, uint64_t now);
    CallOutcome order_response(const Address& sender, const Address& target, uint64_t unit_price_gwei,
                               uint32_t bandwidth_mhz, uint64_t now);
    CallOutcome delete_order(const Address& sender);
    CallOutcome market_end(uint64_t now);
    CallOutcome pay_or_not(const Address& sender, const Address& operator_address, bool executed);
    CallOutcome increase_funds(const Address& sender, Wei value_wei);
    CallOutcome withdraw(const Address& sender);
    CallOutcome change_owner(const Address& sender, const Address& new_owner);
    CallOutcome self_destruct(const Address& sender);

    // Observers.
    const Address& owner() const { return owner_; }
    Phase phase() const { return phase_; }
    uint64_t t0() const { return t0_; }
    uint64_t t_bid() const { return t_bid_; }
    uint64_t t_free() const { return t_free_; }
    std::optional<uint64_t> t1() const { return t1_; }
    bool double_auction_finished() const { return double_auction_finish_; }
    const std::vector<Order>& asks() const { return asks_; }
    const std::vector<Order>& bids() const { return bids_; }
    const std::map<Address, Wei>& deposits() const { return deposit_; }
    Wei deposit_of(const Address& a) const;
    bool execute_or_not(const Address& a) const;  // defaults to true for registered operators
    const std::vector<MatchRecord>& matches() const { return matches_; }
    const std::vector<Event>& events() const { return events_; }
    Wei contract_held_wei() const;

    // Event block heights are stamped by the executor.
    void set_block_context(uint64_t height);

    void encode_state(Encoder& e) const;

  private:
    bool registration_open(uint64_t now) const { return now <= t0_ + t_bid_; }
    void emit(EventKind kind, const Address& a, const Address& b, Role role, uint64_t price, uint32_t bandwidth);
    Order* find_order(std::vector<Order>& book, const Address& owner);

    Address owner_;
    uint64_t t0_ = 0;
    uint64_t t_bid_ = 0;
    uint64_t t_free_ = 0;
    std::optional<uint64_t> t1_;
    Phase phase_ = Phase::Registration;
    std::vector<Order> asks_;  // price-ascending after sortAskByIncrease
    std::vector<Order> bids_;  // price-descending after sortBidByDecrease
    bool asks_sorted_ = false;
    bool bids_sorted_ = false;
    bool double_auction_finish_ = false;
    std::map<Address, Wei> deposit_;
    std::map<Address, bool> execute_or_not_;
    std::vector<MatchRecord> matches_;
    std::vector<Event> events_;
    uint64_t block_height_ = 0;
    uint32_t event_index_ = 0;
};

}  // namespace moss
