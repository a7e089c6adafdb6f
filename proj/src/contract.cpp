#include "moss/contract.hpp"

#include <algorithm>

namespace moss {

const char* revert_name(Revert r) {
    switch (r) {
        case Revert::NotAdministrator: return "NotAdministrator";
        case Revert::RegistrationClosed: return "RegistrationClosed";
        case Revert::InsufficientDeposit: return "InsufficientDeposit";
        case Revert::DuplicateRegistration: return "DuplicateRegistration";
        case Revert::ZeroQuantity: return "ZeroQuantity";
        case Revert::WrongPhase: return "WrongPhase";
        case Revert::AlreadyAuctioned: return "AlreadyAuctioned";
        case Revert::BooksNotSorted: return "BooksNotSorted";
        case Revert::TooEarly: return "TooEarly";
        case Revert::MarketNotOpened: return "MarketNotOpened";
        case Revert::MarketClosed: return "MarketClosed";
        case Revert::UnknownTarget: return "UnknownTarget";
        case Revert::PriceMismatch: return "PriceMismatch";
        case Revert::BuyerUnderfunded: return "BuyerUnderfunded";
        case Revert::NoOrder: return "NoOrder";
        case Revert::UnknownOperator: return "UnknownOperator";
        case Revert::NotRegistered: return "NotRegistered";
        case Revert::ZeroValue: return "ZeroValue";
        case Revert::InvalidOp: return "Invalid op";
        case Revert::NothingToWithdraw: return "NothingToWithdraw";
        case Revert::ContractDestroyed: return "ContractDestroyed";
        case Revert::NotPayable: return "NotPayable";
        case Revert::NoContract: return "NoContract";
        case Revert::AlreadyDeployed: return "AlreadyDeployed";
        case Revert::BadArguments: return "BadArguments";
        case Revert::InsufficientBalance: return "InsufficientBalance";
    }
    return "unknown";
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Registration: return "Registration";
        case Phase::AuctionReady: return "AuctionReady";
        case Phase::Auctioned: return "Auctioned";
        case Phase::FreeTrading: return "FreeTrading";
        case Phase::Cleared: return "Cleared";
        case Phase::Destroyed: return "Destroyed";
    }
    return "unknown";
}

const char* trade_stage_name(TradeStage s) { return s == TradeStage::Auction ? "auction" : "free_market"; }

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::LogRegisterOp: return "LogRegisterOp";
        case EventKind::LogDealRecord: return "LogDealRecord";
        case EventKind::LogFreeMarketOrder: return "LogFreeMarketOrder";
        case EventKind::LogBuyerSkipped: return "LogBuyerSkipped";
    }
    return "unknown";
}

namespace {

uint64_t midpoint_price(uint64_t ask, uint64_t bid) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(ask) + bid) / 2);
}

Wei deal_money(uint64_t price_gwei, uint32_t amount_mhz) {
    return static_cast<Wei>(price_gwei) * amount_mhz * kWeiPerGwei;
}

}  // namespace

MossContract::MossContract(Address owner, uint64_t t_bid_seconds, uint64_t t_free_seconds, uint64_t now)
    : owner_(owner), t0_(now), t_bid_(t_bid_seconds), t_free_(t_free_seconds) {}

void MossContract::set_block_context(uint64_t height) {
    if (height != block_height_) event_index_ = 0;
    block_height_ = height;
}

void MossContract::emit(EventKind kind, const Address& a, const Address& b, Role role, uint64_t price,
                        uint32_t bandwidth) {
    Event ev;
    ev.kind = kind;
    ev.block_height = block_height_;
    ev.index = event_index_++;
    ev.address_a = a;
    ev.address_b = b;
    ev.role = role;
    ev.unit_price_gwei = price;
    ev.bandwidth_mhz = bandwidth;
    events_.push_back(ev);
}

Order* MossContract::find_order(std::vector<Order>& book, const Address& owner) {
    for (Order& order : book)
        if (order.owner == owner) return &order;
    return nullptr;
}

CallOutcome MossContract::bid_or_ask_submit(const Address& sender, Role role, uint32_t bandwidth_mhz,
                                            uint64_t unit_price_gwei, Wei value_wei, uint64_t now) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (!registration_open(now)) return CallOutcome::reverted(Revert::RegistrationClosed);
    if (value_wei < kWeiPerEth) return CallOutcome::reverted(Revert::InsufficientDeposit);
    if (deposit_.contains(sender)) return CallOutcome::reverted(Revert::DuplicateRegistration);
    if (bandwidth_mhz == 0 || unit_price_gwei == 0) return CallOutcome::reverted(Revert::ZeroQuantity);

    deposit_[sender] = value_wei;
    execute_or_not_[sender] = true;
    Order order{sender, role, unit_price_gwei, bandwidth_mhz};
    (role == Role::Seller ? asks_ : bids_).push_back(order);
    emit(EventKind::LogRegisterOp, sender, Address{}, role, unit_price_gwei, bandwidth_mhz);
    return CallOutcome::success();
}

CallOutcome MossContract::registration_end(uint64_t now) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    bool ended = now > t0_ + t_bid_;
    if (ended && phase_ == Phase::Registration) phase_ = Phase::AuctionReady;
    CallOutcome out = CallOutcome::success();
    out.boolean = ended;
    return out;
}

CallOutcome MossContract::sort_ask_by_increase(const Address& sender) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (sender != owner_) return CallOutcome::reverted(Revert::NotAdministrator);
    if (phase_ != Phase::AuctionReady) return CallOutcome::reverted(Revert::WrongPhase);
    std::stable_sort(asks_.begin(), asks_.end(),
                     [](const Order& a, const Order& b) { return a.unit_price_gwei < b.unit_price_gwei; });
    asks_sorted_ = true;
    return CallOutcome::success();
}

CallOutcome MossContract::sort_bid_by_decrease(const Address& sender) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (sender != owner_) return CallOutcome::reverted(Revert::NotAdministrator);
    if (phase_ != Phase::AuctionReady) return CallOutcome::reverted(Revert::WrongPhase);
    std::stable_sort(bids_.begin(), bids_.end(),
                     [](const Order& a, const Order& b) { return a.unit_price_gwei > b.unit_price_gwei; });
    bids_sorted_ = true;
    return CallOutcome::success();
}

CallOutcome MossContract::double_auction(const Address& sender) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (sender != owner_) return CallOutcome::reverted(Revert::NotAdministrator);
    if (double_auction_finish_) return CallOutcome::reverted(Revert::AlreadyAuctioned);
    if (phase_ != Phase::AuctionReady) return CallOutcome::reverted(Revert::WrongPhase);
    if (!asks_sorted_ || !bids_sorted_) return CallOutcome::reverted(Revert::BooksNotSorted);

    // Head-to-head matching at the floor midpoint: the cheapest ask against
    // the highest bid until one book empties or the prices cross. When both
    // heads exhaust in the same deal, both are removed; a zero-amount match
    // is never recorded.
    while (!asks_.empty() && !bids_.empty() && bids_.front().unit_price_gwei >= asks_.front().unit_price_gwei) {
        Order& ask = asks_.front();
        Order& bid = bids_.front();
        uint64_t deal_price = midpoint_price(ask.unit_price_gwei, bid.unit_price_gwei);
        uint32_t deal_amount = std::min(ask.bandwidth_mhz, bid.bandwidth_mhz);
        Wei total = deal_money(deal_price, deal_amount);

        if (deposit_[bid.owner] < total) {
            // Deposits never go negative: drop the buyer and move on.
            emit(EventKind::LogBuyerSkipped, bid.owner, Address{}, Role::Buyer, deal_price, deal_amount);
            bids_.erase(bids_.begin());
            continue;
        }

        deposit_[bid.owner] -= total;
        deposit_[ask.owner] += total;
        ask.bandwidth_mhz -= deal_amount;
        bid.bandwidth_mhz -= deal_amount;
        matches_.push_back({ask.owner, bid.owner, deal_amount, deal_price, TradeStage::Auction, total});
        emit(EventKind::LogDealRecord, ask.owner, bid.owner, Role::Seller, deal_price, deal_amount);

        if (bids_.front().bandwidth_mhz == 0) bids_.erase(bids_.begin());
        if (asks_.front().bandwidth_mhz == 0) asks_.erase(asks_.begin());
    }

    double_auction_finish_ = true;
    phase_ = Phase::Auctioned;
    return CallOutcome::success();
}

CallOutcome MossContract::free_trade_begin(const Address& sender, uint64_t now) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (sender != owner_) return CallOutcome::reverted(Revert::NotAdministrator);
    if (phase_ != Phase::Auctioned) return CallOutcome::reverted(Revert::WrongPhase);
    if (now <= t0_ + t_bid_) return CallOutcome::reverted(Revert::TooEarly);
    t1_ = now;
    phase_ = Phase::FreeTrading;
    return CallOutcome::success();
}

CallOutcome MossContract::order_response(const Address& sender, const Address& target, uint64_t unit_price_gwei,
                                         uint32_t bandwidth_mhz, uint64_t now) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (phase_ != Phase::FreeTrading || !t1_ || now < *t1_ || now > *t1_ + t_free_)
        return CallOutcome::reverted(Revert::MarketClosed);
    if (bandwidth_mhz == 0 || unit_price_gwei == 0) return CallOutcome::reverted(Revert::ZeroQuantity);

    if (target == sender) {
        // Seller resubmits its residual order with an adjusted price. The
        // posted quantity stays capped at the unsold remainder so nobody can
        // sell more than was registered.
        Order* mine = find_order(asks_, sender);
        if (mine == nullptr) return CallOutcome::reverted(Revert::NoOrder);
        mine->unit_price_gwei = unit_price_gwei;
        mine->bandwidth_mhz = std::min(bandwidth_mhz, mine->bandwidth_mhz);
        emit(EventKind::LogFreeMarketOrder, sender, Address{}, Role::Seller, mine->unit_price_gwei,
             mine->bandwidth_mhz);
        return CallOutcome::success();
    }

    // Buyer hits a posted seller order at the seller's posted price.
    Order* mine = find_order(bids_, sender);
    if (mine == nullptr) return CallOutcome::reverted(Revert::NoOrder);
    Order* posted = find_order(asks_, target);
    if (posted == nullptr) return CallOutcome::reverted(Revert::UnknownTarget);
    if (unit_price_gwei != posted->unit_price_gwei) return CallOutcome::reverted(Revert::PriceMismatch);

    uint32_t traded = std::min({bandwidth_mhz, posted->bandwidth_mhz, mine->bandwidth_mhz});
    Wei total = deal_money(unit_price_gwei, traded);
    if (deposit_[sender] < total) return CallOutcome::reverted(Revert::BuyerUnderfunded);

    deposit_[sender] -= total;
    deposit_[target] += total;
    mine->bandwidth_mhz -= traded;
    posted->bandwidth_mhz -= traded;
    matches_.push_back({target, sender, traded, unit_price_gwei, TradeStage::FreeMarket, total});
    emit(EventKind::LogDealRecord, target, sender, Role::Seller, unit_price_gwei, traded);

    std::erase_if(asks_, [](const Order& o) { return o.bandwidth_mhz == 0; });
    std::erase_if(bids_, [](const Order& o) { return o.bandwidth_mhz == 0; });
    return CallOutcome::success();
}

CallOutcome MossContract::delete_order(const Address& sender) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (phase_ != Phase::Auctioned && phase_ != Phase::FreeTrading) return CallOutcome::reverted(Revert::WrongPhase);
    size_t removed = std::erase_if(asks_, [&](const Order& o) { return o.owner == sender; }) +
                     std::erase_if(bids_, [&](const Order& o) { return o.owner == sender; });
    if (removed == 0) return CallOutcome::reverted(Revert::NoOrder);
    return CallOutcome::success();
}

CallOutcome MossContract::market_end(uint64_t now) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (!t1_) return CallOutcome::reverted(Revert::MarketNotOpened);
    bool ended = now > *t1_ + t_free_;
    if (ended && phase_ == Phase::FreeTrading) phase_ = Phase::Cleared;
    CallOutcome out = CallOutcome::success();
    out.boolean = ended;
    return out;
}

CallOutcome MossContract::pay_or_not(const Address& sender, const Address& operator_address, bool executed) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (sender != owner_) return CallOutcome::reverted(Revert::NotAdministrator);
    if (!deposit_.contains(operator_address)) return CallOutcome::reverted(Revert::UnknownOperator);
    execute_or_not_[operator_address] = executed;
    return CallOutcome::success();
}

CallOutcome MossContract::increase_funds(const Address& sender, Wei value_wei) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (!deposit_.contains(sender)) return CallOutcome::reverted(Revert::NotRegistered);
    if (value_wei == 0) return CallOutcome::reverted(Revert::ZeroValue);
    deposit_[sender] += value_wei;
    return CallOutcome::success();
}

CallOutcome MossContract::withdraw(const Address& sender) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (phase_ != Phase::Cleared) return CallOutcome::reverted(Revert::WrongPhase);
    if (!execute_or_not(sender)) return CallOutcome::reverted(Revert::InvalidOp);
    Wei balance = deposit_of(sender);
    if (balance == 0) return CallOutcome::reverted(Revert::NothingToWithdraw);
    deposit_[sender] = 0;
    CallOutcome out = CallOutcome::success();
    out.payouts.push_back({sender, balance});
    return out;
}

CallOutcome MossContract::change_owner(const Address& sender, const Address& new_owner) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (sender != owner_) return CallOutcome::reverted(Revert::NotAdministrator);
    owner_ = new_owner;
    return CallOutcome::success();
}

CallOutcome MossContract::self_destruct(const Address& sender) {
    if (phase_ == Phase::Destroyed) return CallOutcome::reverted(Revert::ContractDestroyed);
    if (sender != owner_) return CallOutcome::reverted(Revert::NotAdministrator);
    if (phase_ != Phase::Cleared) return CallOutcome::reverted(Revert::WrongPhase);

    CallOutcome out = CallOutcome::success();
    for (auto& [addr, balance] : deposit_) {
        if (balance == 0) continue;
        // Punished operators forfeit their remaining deposit to the owner.
        out.payouts.push_back({execute_or_not(addr) ? addr : owner_, balance});
        balance = 0;
    }
    phase_ = Phase::Destroyed;
    return out;
}

Wei MossContract::deposit_of(const Address& a) const {
    auto it = deposit_.find(a);
    return it == deposit_.end() ? 0 : it->second;
}

bool MossContract::execute_or_not(const Address& a) const {
    auto it = execute_or_not_.find(a);
    return it == execute_or_not_.end() ? true : it->second;
}

Wei MossContract::contract_held_wei() const {
    Wei total = 0;
    for (const auto& [addr, balance] : deposit_) total += balance;
    return total;
}

void MossContract::encode_state(Encoder& e) const {
    e.put_address(owner_);
    e.put_u64(t0_);
    e.put_u64(t_bid_);
    e.put_u64(t_free_);
    e.put_bool(t1_.has_value());
    e.put_u64(t1_.value_or(0));
    e.put_u8(static_cast<uint8_t>(phase_));
    e.put_bool(asks_sorted_);
    e.put_bool(bids_sorted_);
    e.put_bool(double_auction_finish_);

    auto put_book = [&e](const std::vector<Order>& book) {
        e.put_u32(static_cast<uint32_t>(book.size()));
        for (const Order& o : book) {
            e.put_address(o.owner);
            e.put_u8(static_cast<uint8_t>(o.role));
            e.put_u64(o.unit_price_gwei);
            e.put_u32(o.bandwidth_mhz);
        }
    };
    put_book(asks_);
    put_book(bids_);

    e.put_u32(static_cast<uint32_t>(deposit_.size()));
    for (const auto& [addr, balance] : deposit_) {
        e.put_address(addr);
        e.put_u128(balance);
    }
    e.put_u32(static_cast<uint32_t>(execute_or_not_.size()));
    for (const auto& [addr, flag] : execute_or_not_) {
        e.put_address(addr);
        e.put_bool(flag);
    }
    e.put_u32(static_cast<uint32_t>(matches_.size()));
    for (const MatchRecord& m : matches_) {
        e.put_address(m.seller);
        e.put_address(m.buyer);
        e.put_u32(m.amount_mhz);
        e.put_u64(m.unit_price_gwei);
        e.put_u8(static_cast<uint8_t>(m.stage));
        e.put_u128(m.total_wei);
    }
    e.put_u32(static_cast<uint32_t>(events_.size()));
    for (const Event& ev : events_) {
        e.put_u8(static_cast<uint8_t>(ev.kind));
        e.put_u64(ev.block_height);
        e.put_u32(ev.index);
        e.put_address(ev.address_a);
        e.put_address(ev.address_b);
        e.put_u8(static_cast<uint8_t>(ev.role));
        e.put_u64(ev.unit_price_gwei);
        e.put_u32(ev.bandwidth_mhz);
    }
}

}  // namespace moss
