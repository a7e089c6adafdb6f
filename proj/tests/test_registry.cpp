#include <doctest.h>

#include "moss/registry.hpp"

#include <random>
#include <set>

using namespace moss;

TEST_CASE("registration issues verifying certificates") {
    crypto::KeyPair admin = crypto::KeyPair::from_label("admin");
    IdentityRegistry registry(admin.public_key());

    OperatorIdentity id1 = registry.register_operator(admin, "OP1", crypto::KeyPair::from_label("OP1").public_key());
    CHECK(registry.verify_certificate(id1));
    CHECK(registry.is_member(id1.wallet_address));
    CHECK(id1.wallet_address == crypto::address_of(id1.public_key));

    SUBCASE("duplicate id is rejected") {
        CHECK_THROWS_WITH_AS(registry.register_operator(admin, "OP1", crypto::KeyPair::from_label("x").public_key()),
                             doctest::Contains("already registered"), RegistryError);
    }
    SUBCASE("only the administrator key can register") {
        crypto::KeyPair impostor = crypto::KeyPair::from_label("impostor");
        try {
            registry.register_operator(impostor, "OP9", crypto::KeyPair::from_label("OP9").public_key());
            FAIL("expected RegistryError");
        } catch (const RegistryError& err) {
            CHECK(err.code == RegistryErrorCode::NotAdministrator);
        }
    }
}

TEST_CASE("the six-operator roster yields seven members with distinct wallets") {
    crypto::KeyPair admin = crypto::KeyPair::from_label("admin");
    IdentityRegistry registry(admin.public_key());

    std::set<Address> op_wallets;
    for (int i = 1; i <= 6; ++i) {
        std::string id = "OP" + std::to_string(i);
        OperatorIdentity identity = registry.register_operator(admin, id, crypto::KeyPair::from_label(id).public_key());
        CHECK(registry.verify_certificate(identity));
        op_wallets.insert(identity.wallet_address);
    }
    CHECK(registry.size() == 6);
    CHECK(op_wallets.size() == 6);
    CHECK(registry.roster().size() == 7);  // admin account + 6 operators
    CHECK_FALSE(op_wallets.contains(registry.admin_address()));
}

TEST_CASE("certificates are tamper evident") {
    crypto::KeyPair admin = crypto::KeyPair::from_label("admin");
    IdentityRegistry registry(admin.public_key());
    OperatorIdentity identity = registry.register_operator(admin, "OP1", crypto::KeyPair::from_label("OP1").public_key());

    for (size_t i = 0; i < identity.certificate.size(); ++i) {
        OperatorIdentity tampered = identity;
        tampered.certificate[i] ^= 0x01;
        CHECK_FALSE(registry.verify_certificate(tampered));
    }
    SUBCASE("tampered bound fields also fail") {
        OperatorIdentity wrong_wallet = identity;
        wrong_wallet.wallet_address.bytes[3] ^= 0x01;
        CHECK_FALSE(registry.verify_certificate(wrong_wallet));
        OperatorIdentity wrong_id = identity;
        wrong_id.id = "OP1 ";
        CHECK_FALSE(registry.verify_certificate(wrong_id));
    }
}

TEST_CASE("membership is sound under random addresses") {
    crypto::KeyPair admin = crypto::KeyPair::from_label("admin");
    IdentityRegistry registry(admin.public_key());
    registry.register_operator(admin, "OP1", crypto::KeyPair::from_label("OP1").public_key());

    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        Address random;
        for (auto& b : random.bytes) b = static_cast<uint8_t>(rng());
        CHECK_FALSE(registry.is_member(random));
        CHECK(registry.find_key(random) == nullptr);
    }
}

TEST_CASE("revocation closes the membership gate without erasing history") {
    crypto::KeyPair admin = crypto::KeyPair::from_label("admin");
    IdentityRegistry registry(admin.public_key());
    OperatorIdentity identity = registry.register_operator(admin, "OP1", crypto::KeyPair::from_label("OP1").public_key());

    CHECK(registry.is_member(identity.wallet_address));
    registry.revoke(identity.wallet_address);
    CHECK_FALSE(registry.is_member(identity.wallet_address));
    CHECK(registry.find_key(identity.wallet_address) == nullptr);
    CHECK(registry.find_identity("OP1") != nullptr);  // the mapping itself stays
}

TEST_CASE("seller bandwidth constraint") {
    OperatorProfile profile;
    profile.role = Role::Seller;

    SUBCASE("boundary equality holds") {
        profile.total_bandwidth_mhz = 30;
        profile.offered_or_demanded_mhz = 20;
        profile.required_bandwidth_mhz = 10;
        CHECK(validate_seller_constraint(profile));
    }
    SUBCASE("oversold spectrum fails") {
        profile.total_bandwidth_mhz = 30;
        profile.offered_or_demanded_mhz = 25;
        profile.required_bandwidth_mhz = 10;
        CHECK_FALSE(validate_seller_constraint(profile));
    }
    SUBCASE("the scenario seller passes with headroom") {
        profile.total_bandwidth_mhz = 40;
        profile.offered_or_demanded_mhz = 20;
        profile.required_bandwidth_mhz = 15;
        CHECK(validate_seller_constraint(profile));
    }
    SUBCASE("buyer profiles are the wrong role") {
        profile.role = Role::Buyer;
        try {
            validate_seller_constraint(profile);
            FAIL("expected RegistryError");
        } catch (const RegistryError& err) {
            CHECK(err.code == RegistryErrorCode::WrongRole);
        }
    }
}
