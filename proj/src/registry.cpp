#include "moss/registry.hpp"

#include "moss/codec.hpp"

namespace moss {

Bytes OperatorIdentity::certified_bytes() const {
    Encoder e;
    e.put_string(id);
    e.put_fixed(std::span<const uint8_t>(public_key.data(), public_key.size()));
    e.put_address(wallet_address);
    return e.take();
}

bool validate_seller_constraint(const OperatorProfile& profile) {
    if (profile.role != Role::Seller)
        throw RegistryError(RegistryErrorCode::WrongRole, "seller constraint checked on buyer profile");
    return profile.total_bandwidth_mhz >= profile.offered_or_demanded_mhz &&
           profile.total_bandwidth_mhz - profile.offered_or_demanded_mhz >= profile.required_bandwidth_mhz;
}

IdentityRegistry::IdentityRegistry(const crypto::PublicKey& admin_key)
    : admin_key_(admin_key), admin_address_(crypto::address_of(admin_key)) {
    by_wallet_[admin_address_] = admin_key_;
}

OperatorIdentity IdentityRegistry::register_operator(const crypto::KeyPair& admin_key, const std::string& id,
                                                     const crypto::PublicKey& operator_key) {
    if (admin_key.public_key() != admin_key_)
        throw RegistryError(RegistryErrorCode::NotAdministrator, "registration requires the administrator key");
    if (by_id_.contains(id)) throw RegistryError(RegistryErrorCode::DuplicateId, "operator id already registered: " + id);

    OperatorIdentity identity;
    identity.id = id;
    identity.public_key = operator_key;
    identity.wallet_address = crypto::address_of(operator_key);
    Bytes msg = identity.certified_bytes();
    identity.certificate = admin_key.sign(msg);

    by_id_[id] = identity;
    by_wallet_[identity.wallet_address] = operator_key;
    return identity;
}

void IdentityRegistry::revoke(const Address& wallet) { revoked_.insert(wallet); }

bool IdentityRegistry::is_member(const Address& wallet) const {
    return by_wallet_.contains(wallet) && !revoked_.contains(wallet);
}

const crypto::PublicKey* IdentityRegistry::find_key(const Address& wallet) const {
    auto it = by_wallet_.find(wallet);
    if (it == by_wallet_.end() || revoked_.contains(wallet)) return nullptr;
    return &it->second;
}

const OperatorIdentity* IdentityRegistry::find_identity(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &it->second;
}

bool IdentityRegistry::verify_certificate(const OperatorIdentity& identity) const {
    Bytes msg = identity.certified_bytes();
    return crypto::verify(admin_key_, msg, identity.certificate);
}

std::vector<std::pair<Address, crypto::PublicKey>> IdentityRegistry::roster() const {
    std::vector<std::pair<Address, crypto::PublicKey>> out;
    out.reserve(by_wallet_.size());
    for (const auto& [addr, key] : by_wallet_) out.emplace_back(addr, key);
    return out;
}

IdentityRegistry IdentityRegistry::from_roster(const crypto::PublicKey& admin_key,
                                               const std::vector<std::pair<Address, crypto::PublicKey>>& members) {
    IdentityRegistry reg(admin_key);
    for (const auto& [addr, key] : members) reg.by_wallet_[addr] = key;
    return reg;
}

}  // namespace moss
