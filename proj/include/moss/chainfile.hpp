#pragma once

#include "moss/block.hpp"
#include "moss/gas.hpp"

#include <string>

namespace moss {

// Append-only chain file, format v1:
//   magic "MOSC" | version u16
//   context: admin pubkey, gas schedule, account roster with starting
//            balances (everything a verifier needs to replay the chain)
//   records: { u32 len | block bytes | sha256(block bytes) }*
// The per-record checksum makes any single-byte corruption detectable
// before block-level verification even starts.

struct ChainFileContext {
    crypto::PublicKey admin_key{};
    GasSchedule schedule;
    // (wallet, key, initial external balance); includes the administrator.
    std::vector<std::tuple<Address, crypto::PublicKey, Wei>> accounts;
};

// Canonical bytes of the context section; hashed into the run digest so a
// verifier notices context tampering even when the replayed state would be
// unaffected (e.g. the gas figure of a function the chain never calls).
Bytes encode_context(const ChainFileContext& context);

enum class ChainFileErrorCode { CorruptFile, IoError };

struct ChainFileError : std::runtime_error {
    ChainFileErrorCode code;
    ChainFileError(ChainFileErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

void write_chain_file(const std::string& path, const ChainFileContext& context, const std::vector<Block>& blocks);

struct LoadedChain {
    ChainFileContext context;
    std::vector<Block> blocks;
};

// Throws ChainFileError (CorruptFile) on bad magic, truncation, checksum
// mismatch or undecodable records.
LoadedChain load_chain_file(const std::string& path);

}  // namespace moss
