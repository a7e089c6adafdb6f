#pragma once

#include "moss/bytes.hpp"

namespace moss::crypto {

// One 256-bit hash is used everywhere: block ids, merkle nodes, signing digests.
Hash32 sha256(std::span<const uint8_t> data);
Hash32 sha256_concat(const Hash32& a, const Hash32& b);

inline Hash32 sha256(const Bytes& data) { return sha256(std::span<const uint8_t>(data.data(), data.size())); }

using PublicKey = std::array<uint8_t, 32>;
using Seed = std::array<uint8_t, 32>;
using Signature = std::array<uint8_t, 64>;

// Ed25519 behind a narrow interface. Signing is deterministic: the same
// (seed, message) always yields the same signature bytes.
class KeyPair {
  public:
    static KeyPair from_seed(const Seed& seed);
    // Convenience for test/scenario fixtures: seed = sha256(label).
    static KeyPair from_label(std::string_view label);

    const PublicKey& public_key() const { return public_; }
    Address address() const;

    Signature sign(std::span<const uint8_t> message) const;

  private:
    Seed seed_{};
    PublicKey public_{};
};

bool verify(const PublicKey& key, std::span<const uint8_t> message, const Signature& sig);

// Account address: first 20 bytes of sha256(public key).
Address address_of(const PublicKey& key);

}  // namespace moss::crypto
