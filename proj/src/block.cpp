#include "moss/block.hpp"

namespace moss {

Hash32 merkle_root(std::span<const Hash32> leaves) {
    if (leaves.empty()) return kZeroHash;
    std::vector<Hash32> level(leaves.begin(), leaves.end());
    do {
        std::vector<Hash32> next;
        next.reserve((level.size() + 1) / 2);
        for (size_t i = 0; i < level.size(); i += 2) {
            const Hash32& left = level[i];
            const Hash32& right = (i + 1 < level.size()) ? level[i + 1] : level[i];
            next.push_back(crypto::sha256_concat(left, right));
        }
        level = std::move(next);
    } while (level.size() > 1);
    return level[0];
}

Bytes Block::encode() const {
    Encoder e;
    e.put_u64(height);
    e.put_hash(prev_hash);
    e.put_hash(merkle_root);
    e.put_u64(timestamp);
    e.put_u32(proposer_id);
    e.put_u32(static_cast<uint32_t>(transactions.size()));
    for (const Transaction& tx : transactions) e.put_bytes(tx.encode());
    return e.take();
}

Block Block::decode(std::span<const uint8_t> data) {
    Decoder d(data);
    Block b;
    b.height = d.get_u64();
    b.prev_hash = d.get_hash();
    b.merkle_root = d.get_hash();
    b.timestamp = d.get_u64();
    b.proposer_id = d.get_u32();
    uint32_t n = d.get_u32();
    b.transactions.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        Bytes raw = d.get_bytes();
        b.transactions.push_back(Transaction::decode(raw));
    }
    d.expect_done();
    return b;
}

Hash32 Block::digest() const { return crypto::sha256(encode()); }

Hash32 Block::compute_merkle_root() const {
    std::vector<Hash32> leaves;
    leaves.reserve(transactions.size());
    for (const Transaction& tx : transactions) leaves.push_back(tx.digest());
    return moss::merkle_root(leaves);
}

Block Block::genesis() {
    Block b;
    b.height = 0;
    b.prev_hash = kZeroHash;
    b.merkle_root = kZeroHash;
    b.timestamp = 0;
    b.proposer_id = 0;
    return b;
}

Block make_block(uint64_t height, const Hash32& prev_hash, uint64_t timestamp, uint32_t proposer_id,
                 std::vector<Transaction> txs) {
    Block b;
    b.height = height;
    b.prev_hash = prev_hash;
    b.timestamp = timestamp;
    b.proposer_id = proposer_id;
    b.transactions = std::move(txs);
    b.merkle_root = b.compute_merkle_root();
    return b;
}

}  // namespace moss
