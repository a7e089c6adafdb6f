#include "moss/bytes.hpp"

namespace moss {

static constexpr char kHexDigits[] = "0123456789abcdef";

std::string to_hex(std::span<const uint8_t> data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd hex length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<uint8_t>(hex_nibble(hex[2 * i]) << 4 | hex_nibble(hex[2 * i + 1]));
    return out;
}

Address address_from_hex(std::string_view hex) {
    Bytes raw = from_hex(hex);
    if (raw.size() != 20) throw std::invalid_argument("address must be 20 bytes");
    Address a;
    std::copy(raw.begin(), raw.end(), a.bytes.begin());
    return a;
}

Hash32 hash_from_hex(std::string_view hex) {
    Bytes raw = from_hex(hex);
    if (raw.size() != 32) throw std::invalid_argument("hash must be 32 bytes");
    Hash32 h;
    std::copy(raw.begin(), raw.end(), h.begin());
    return h;
}

std::string wei_to_string(Wei w) {
    if (w == 0) return "0";
    std::string out;
    while (w > 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(w % 10)));
        w /= 10;
    }
    return std::string(out.rbegin(), out.rend());
}

Wei wei_from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty wei string");
    Wei w = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad wei string");
        Wei next = w * 10 + static_cast<unsigned>(c - '0');
        if (next < w) throw std::overflow_error("wei overflow");
        w = next;
    }
    return w;
}

std::string wei_to_eth_string(Wei w) {
    Wei whole = w / kWeiPerEth;
    Wei frac = w % kWeiPerEth;
    std::string out = wei_to_string(whole);
    if (frac == 0) return out;
    std::string digits = wei_to_string(frac);
    digits.insert(digits.begin(), 18 - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    return out + "." + digits;
}

}  // namespace moss
