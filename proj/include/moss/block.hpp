#pragma once

#include "moss/tx.hpp"

namespace moss {

// Binary merkle tree with odd-node duplication at every level.
// Empty input is defined as the all-zero digest; a single leaf d hashes
// as sha256(d || d).
Hash32 merkle_root(std::span<const Hash32> leaves);

struct Block {
    uint64_t height = 0;
    Hash32 prev_hash{};      // digest of the parent block; all-zero for genesis
    Hash32 merkle_root{};    // over the contained transaction digests
    uint64_t timestamp = 0;  // strictly greater than the parent's
    uint32_t proposer_id = 0;
    std::vector<Transaction> transactions;

    Bytes encode() const;
    static Block decode(std::span<const uint8_t> data);

    // Block id: sha256 over the full canonical encoding, so a flip of any
    // byte in the block changes the id the successor links against.
    Hash32 digest() const;

    Hash32 compute_merkle_root() const;

    static Block genesis();
};

// Fills merkle_root from the transaction list and returns the block.
Block make_block(uint64_t height, const Hash32& prev_hash, uint64_t timestamp, uint32_t proposer_id,
                 std::vector<Transaction> txs);

}  // namespace moss
