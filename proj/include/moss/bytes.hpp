#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moss {

using Bytes = std::vector<uint8_t>;
using Hash32 = std::array<uint8_t, 32>;

inline constexpr Hash32 kZeroHash{};

// 20-byte account address, displayed 0x-prefixed like the usual wallet format.
struct Address {
    std::array<uint8_t, 20> bytes{};

    auto operator<=>(const Address&) const = default;
    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0) return false;
        return true;
    }
};

inline constexpr Address kZeroAddress{};

std::string to_hex(std::span<const uint8_t> data);
Bytes from_hex(std::string_view hex);

inline std::string to_hex(const Hash32& h) { return to_hex(std::span<const uint8_t>(h.data(), h.size())); }
inline std::string to_hex(const Address& a) { return "0x" + to_hex(std::span<const uint8_t>(a.bytes.data(), a.bytes.size())); }

Address address_from_hex(std::string_view hex);
Hash32 hash_from_hex(std::string_view hex);

// Currency. wei is the base unit; 1 eth = 1e18 wei, 1 Gwei = 1e9 wei.
// Balances around 100 eth exceed uint64, so the money type is 128-bit.
using Wei = unsigned __int128;

inline constexpr Wei kWeiPerGwei = 1'000'000'000ull;
inline constexpr Wei kWeiPerEth = kWeiPerGwei * kWeiPerGwei;

std::string wei_to_string(Wei w);
Wei wei_from_string(std::string_view s);
// Exact decimal eth rendering, e.g. "98.9990694112"; no rounding.
std::string wei_to_eth_string(Wei w);

}  // namespace moss
