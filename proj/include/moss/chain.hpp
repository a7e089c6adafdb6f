#pragma once

#include "moss/block.hpp"
#include "moss/registry.hpp"

#include <deque>
#include <map>
#include <optional>

namespace moss {

enum class ChainError {
    BadLinkage,
    BadMerkleRoot,
    BadSignature,
    NonMonotoneTimestamp,
    UnknownSender,
    BadNonce,
};

const char* chain_error_name(ChainError e);

enum class TxCheck { Ok, UnknownSender, BadSignature, BadNonce };

// Ledger-level admission: sender registered, signature valid, nonce exactly
// the next expected value for the sender.
TxCheck check_transaction(const Transaction& tx, const IdentityRegistry& registry, uint64_t expected_nonce);

// Single-writer hash-linked chain. Starts at the fixed genesis block; every
// append re-validates linkage, merkle root, timestamps, signatures and
// nonces, so a Chain can only ever hold a fully verified history.
class Chain {
  public:
    Chain();

    // Validates `block` against the current head without mutating anything.
    std::optional<ChainError> validate_next(const Block& block, const IdentityRegistry& registry) const;

    // Appends after validation; returns the error instead when invalid.
    std::optional<ChainError> append_block(const Block& block, const IdentityRegistry& registry);

    const Block& head() const { return blocks_.back(); }
    Hash32 head_digest() const { return head_digest_; }
    uint64_t next_height() const { return blocks_.back().height + 1; }
    size_t size() const { return blocks_.size(); }
    const std::vector<Block>& blocks() const { return blocks_; }

    uint64_t next_nonce(const Address& sender) const;

    bool tx_valid_here(const Transaction& tx, const IdentityRegistry& registry) const {
        return check_transaction(tx, registry, next_nonce(tx.sender)) == TxCheck::Ok;
    }

  private:
    std::vector<Block> blocks_;
    Hash32 head_digest_{};
    std::map<Address, uint64_t> next_nonce_;
};

// Pending transactions, FIFO, unique on (sender, nonce).
class Mempool {
  public:
    bool add(Transaction tx);  // false if (sender, nonce) already pending
    std::vector<Transaction> drain(size_t max_count);
    size_t size() const { return pending_.size(); }
    bool empty() const { return pending_.empty(); }

  private:
    std::deque<Transaction> pending_;
    std::set<std::pair<Address, uint64_t>> keys_;
};

}  // namespace moss
