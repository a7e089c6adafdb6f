#include "moss/crypto.hpp"

#include <openssl/evp.h>
#include <openssl/sha.h>

#include <memory>
#include <stdexcept>

namespace moss::crypto {

Hash32 sha256(std::span<const uint8_t> data) {
    Hash32 out;
    SHA256(data.data(), data.size(), out.data());
    return out;
}

Hash32 sha256_concat(const Hash32& a, const Hash32& b) {
    std::array<uint8_t, 64> buf;
    std::copy(a.begin(), a.end(), buf.begin());
    std::copy(b.begin(), b.end(), buf.begin() + 32);
    return sha256(std::span<const uint8_t>(buf.data(), buf.size()));
}

namespace {

struct PkeyDeleter {
    void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct CtxDeleter {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using CtxPtr = std::unique_ptr<EVP_MD_CTX, CtxDeleter>;

PkeyPtr private_key_from_seed(const Seed& seed) {
    PkeyPtr key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), seed.size()));
    if (!key) throw std::runtime_error("ed25519 key derivation failed");
    return key;
}

}  // namespace

KeyPair KeyPair::from_seed(const Seed& seed) {
    KeyPair kp;
    kp.seed_ = seed;
    PkeyPtr key = private_key_from_seed(seed);
    size_t len = kp.public_.size();
    if (EVP_PKEY_get_raw_public_key(key.get(), kp.public_.data(), &len) != 1 || len != kp.public_.size())
        throw std::runtime_error("ed25519 public key extraction failed");
    return kp;
}

KeyPair KeyPair::from_label(std::string_view label) {
    return from_seed(sha256(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(label.data()), label.size())));
}

Address KeyPair::address() const { return address_of(public_); }

Signature KeyPair::sign(std::span<const uint8_t> message) const {
    PkeyPtr key = private_key_from_seed(seed_);
    CtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1)
        throw std::runtime_error("ed25519 sign init failed");
    Signature sig;
    size_t len = sig.size();
    if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1 || len != sig.size())
        throw std::runtime_error("ed25519 sign failed");
    return sig;
}

bool verify(const PublicKey& key, std::span<const uint8_t> message, const Signature& sig) {
    PkeyPtr pub(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, key.data(), key.size()));
    if (!pub) return false;
    CtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pub.get()) != 1) return false;
    return EVP_DigestVerify(ctx.get(), sig.data(), sig.size(), message.data(), message.size()) == 1;
}

Address address_of(const PublicKey& key) {
    Hash32 h = sha256(std::span<const uint8_t>(key.data(), key.size()));
    Address a;
    std::copy(h.begin(), h.begin() + 20, a.bytes.begin());
    return a;
}

}  // namespace moss::crypto
