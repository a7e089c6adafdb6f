#include <doctest.h>

#include "moss/crypto.hpp"

using namespace moss;
using namespace moss::crypto;

namespace {

Bytes as_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

}  // namespace

TEST_CASE("sha256 matches the reference vectors") {
    CHECK(to_hex(sha256(as_bytes(""))) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(to_hex(sha256(as_bytes("abc"))) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("signatures are deterministic and verify") {
    KeyPair key = KeyPair::from_label("op-key");
    Bytes msg = as_bytes("sell 20 MHz");

    Signature sig1 = key.sign(msg);
    Signature sig2 = key.sign(msg);
    CHECK(sig1 == sig2);
    CHECK(verify(key.public_key(), msg, sig1));

    SUBCASE("any flipped signature byte fails verification") {
        for (size_t i = 0; i < sig1.size(); i += 7) {
            Signature tampered = sig1;
            tampered[i] ^= 0x01;
            CHECK_FALSE(verify(key.public_key(), msg, tampered));
        }
    }
    SUBCASE("a different message fails verification") {
        CHECK_FALSE(verify(key.public_key(), as_bytes("sell 21 MHz"), sig1));
    }
    SUBCASE("a different key fails verification") {
        KeyPair other = KeyPair::from_label("other-key");
        CHECK_FALSE(verify(other.public_key(), msg, sig1));
    }
}

TEST_CASE("addresses are the 20-byte truncation of the key hash") {
    KeyPair key = KeyPair::from_label("addr-check");
    Hash32 h = sha256(std::span<const uint8_t>(key.public_key().data(), key.public_key().size()));
    Address expected;
    std::copy(h.begin(), h.begin() + 20, expected.bytes.begin());
    CHECK(key.address() == expected);
    CHECK(address_of(key.public_key()) == expected);
}

TEST_CASE("distinct labels give distinct keys and addresses") {
    CHECK(KeyPair::from_label("a").address() != KeyPair::from_label("b").address());
}
