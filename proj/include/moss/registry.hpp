#pragma once

#include "moss/crypto.hpp"
#include "moss/tx.hpp"

#include <map>
#include <set>

namespace moss {

// Administrator-issued credentials for one operator: {ID, PK, Cert, WA}.
// The certificate is the administrator's signature over (id, key, wallet).
struct OperatorIdentity {
    std::string id;
    crypto::PublicKey public_key{};
    crypto::Signature certificate{};
    Address wallet_address;

    Bytes certified_bytes() const;
};

// Off-chain operator profile. Bandwidth figures never go on chain; the
// seller constraint total - offered >= required is enforced at the agent
// layer before an ask is submitted.
struct OperatorProfile {
    OperatorIdentity identity;
    Role role = Role::Seller;
    uint64_t total_bandwidth_mhz = 0;     // sellers only
    uint64_t required_bandwidth_mhz = 0;  // sellers only
    uint64_t offered_or_demanded_mhz = 0;
    uint64_t unit_price_gwei = 0;
};

enum class RegistryErrorCode { DuplicateId, NotAdministrator, WrongRole, UnknownId };

struct RegistryError : std::runtime_error {
    RegistryErrorCode code;
    RegistryError(RegistryErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// total - offered >= required. Throws WrongRole for buyer profiles.
bool validate_seller_constraint(const OperatorProfile& profile);

// In-memory certificate authority run by the administrator. The mapping
// stays off chain; the ledger only ever sees wallet addresses.
class IdentityRegistry {
  public:
    explicit IdentityRegistry(const crypto::PublicKey& admin_key);

    // Issues a certificate and adds the operator to the membership set.
    // The signing key must be the administrator's.
    OperatorIdentity register_operator(const crypto::KeyPair& admin_key, const std::string& id,
                                       const crypto::PublicKey& operator_key);

    void revoke(const Address& wallet);

    bool is_member(const Address& wallet) const;  // registered and not revoked
    const crypto::PublicKey* find_key(const Address& wallet) const;
    const OperatorIdentity* find_identity(const std::string& id) const;

    bool verify_certificate(const OperatorIdentity& identity) const;

    const Address& admin_address() const { return admin_address_; }
    const crypto::PublicKey& admin_key() const { return admin_key_; }
    size_t size() const { return by_id_.size(); }

    // Membership roster for persistence: (wallet, key) pairs including the
    // administrator's own account.
    std::vector<std::pair<Address, crypto::PublicKey>> roster() const;

    // Rebuilds a membership-only registry (no ids, no certificates) from a
    // persisted roster; used when re-verifying a chain file.
    static IdentityRegistry from_roster(const crypto::PublicKey& admin_key,
                                        const std::vector<std::pair<Address, crypto::PublicKey>>& members);

  private:
    crypto::PublicKey admin_key_{};
    Address admin_address_;
    std::map<std::string, OperatorIdentity> by_id_;
    std::map<Address, crypto::PublicKey> by_wallet_;
    std::set<Address> revoked_;
};

}  // namespace moss
