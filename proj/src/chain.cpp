#include "moss/chain.hpp"

namespace moss {

const char* chain_error_name(ChainError e) {
    switch (e) {
        case ChainError::BadLinkage: return "BadLinkage";
        case ChainError::BadMerkleRoot: return "BadMerkleRoot";
        case ChainError::BadSignature: return "BadSignature";
        case ChainError::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
        case ChainError::UnknownSender: return "UnknownSender";
        case ChainError::BadNonce: return "BadNonce";
    }
    return "unknown";
}

TxCheck check_transaction(const Transaction& tx, const IdentityRegistry& registry, uint64_t expected_nonce) {
    const crypto::PublicKey* key = registry.find_key(tx.sender);
    if (key == nullptr) return TxCheck::UnknownSender;
    Bytes msg = tx.signing_bytes();
    if (!crypto::verify(*key, msg, tx.signature)) return TxCheck::BadSignature;
    if (tx.nonce != expected_nonce) return TxCheck::BadNonce;
    return TxCheck::Ok;
}

Chain::Chain() {
    blocks_.push_back(Block::genesis());
    head_digest_ = blocks_.back().digest();
}

std::optional<ChainError> Chain::validate_next(const Block& block, const IdentityRegistry& registry) const {
    const Block& parent = blocks_.back();
    if (block.height != parent.height + 1 || block.prev_hash != head_digest_) return ChainError::BadLinkage;
    if (block.timestamp <= parent.timestamp) return ChainError::NonMonotoneTimestamp;
    if (block.merkle_root != block.compute_merkle_root()) return ChainError::BadMerkleRoot;

    // Nonces advance within the block, so two transactions of one sender in
    // the same batch must carry consecutive values.
    std::map<Address, uint64_t> nonces;
    for (const Transaction& tx : block.transactions) {
        auto it = nonces.find(tx.sender);
        uint64_t expected = it != nonces.end() ? it->second : next_nonce(tx.sender);
        switch (check_transaction(tx, registry, expected)) {
            case TxCheck::Ok: break;
            case TxCheck::UnknownSender: return ChainError::UnknownSender;
            case TxCheck::BadSignature: return ChainError::BadSignature;
            case TxCheck::BadNonce: return ChainError::BadNonce;
        }
        nonces[tx.sender] = expected + 1;
    }
    return std::nullopt;
}

std::optional<ChainError> Chain::append_block(const Block& block, const IdentityRegistry& registry) {
    if (auto err = validate_next(block, registry)) return err;
    for (const Transaction& tx : block.transactions) next_nonce_[tx.sender] = tx.nonce + 1;
    blocks_.push_back(block);
    head_digest_ = blocks_.back().digest();
    return std::nullopt;
}

uint64_t Chain::next_nonce(const Address& sender) const {
    auto it = next_nonce_.find(sender);
    return it == next_nonce_.end() ? 0 : it->second;
}

bool Mempool::add(Transaction tx) {
    auto key = std::make_pair(tx.sender, tx.nonce);
    if (keys_.contains(key)) return false;
    keys_.insert(key);
    pending_.push_back(std::move(tx));
    return true;
}

std::vector<Transaction> Mempool::drain(size_t max_count) {
    std::vector<Transaction> out;
    while (!pending_.empty() && out.size() < max_count) {
        keys_.erase({pending_.front().sender, pending_.front().nonce});
        out.push_back(std::move(pending_.front()));
        pending_.pop_front();
    }
    return out;
}

}  // namespace moss
