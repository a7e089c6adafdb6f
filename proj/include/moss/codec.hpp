#pragma once

#include "moss/bytes.hpp"

namespace moss {

// Canonical binary layout used for everything that gets hashed or signed:
// fixed field order, big-endian fixed-width integers, u32 length prefixes
// for variable-size fields. Documented in README.md; bump the chain file
// version if this ever changes.

class Encoder {
  public:
    void put_u8(uint8_t v) { buf_.push_back(v); }
    void put_u16(uint16_t v) { put_be(v, 2); }
    void put_u32(uint32_t v) { put_be(v, 4); }
    void put_u64(uint64_t v) { put_be(v, 8); }
    void put_u128(Wei v) {
        for (int i = 15; i >= 0; --i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void put_bool(bool v) { put_u8(v ? 1 : 0); }
    void put_fixed(std::span<const uint8_t> data) { buf_.insert(buf_.end(), data.begin(), data.end()); }
    void put_hash(const Hash32& h) { put_fixed(std::span<const uint8_t>(h.data(), h.size())); }
    void put_address(const Address& a) { put_fixed(std::span<const uint8_t>(a.bytes.data(), a.bytes.size())); }
    void put_bytes(std::span<const uint8_t> data) {
        put_u32(static_cast<uint32_t>(data.size()));
        put_fixed(data);
    }
    void put_string(std::string_view s) {
        put_bytes(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
    }

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

  private:
    template <typename T>
    void put_be(T v, int n) {
        for (int i = n - 1; i >= 0; --i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    Bytes buf_;
};

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Decoder {
  public:
    explicit Decoder(std::span<const uint8_t> data) : data_(data) {}

    uint8_t get_u8() { return take(1)[0]; }
    uint16_t get_u16() { return static_cast<uint16_t>(get_be(2)); }
    uint32_t get_u32() { return static_cast<uint32_t>(get_be(4)); }
    uint64_t get_u64() { return get_be(8); }
    Wei get_u128() {
        auto s = take(16);
        Wei v = 0;
        for (uint8_t b : s) v = (v << 8) | b;
        return v;
    }
    bool get_bool() {
        uint8_t v = get_u8();
        if (v > 1) throw DecodeError("bad bool");
        return v == 1;
    }
    Hash32 get_hash() {
        auto s = take(32);
        Hash32 h;
        std::copy(s.begin(), s.end(), h.begin());
        return h;
    }
    Address get_address() {
        auto s = take(20);
        Address a;
        std::copy(s.begin(), s.end(), a.bytes.begin());
        return a;
    }
    Bytes get_bytes() {
        uint32_t n = get_u32();
        auto s = take(n);
        return Bytes(s.begin(), s.end());
    }
    std::string get_string() {
        Bytes b = get_bytes();
        return std::string(b.begin(), b.end());
    }

    bool done() const { return pos_ == data_.size(); }
    size_t remaining() const { return data_.size() - pos_; }
    void expect_done() const {
        if (!done()) throw DecodeError("trailing bytes");
    }

  private:
    std::span<const uint8_t> take(size_t n) {
        if (n > remaining()) throw DecodeError("short read");
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    uint64_t get_be(int n) {
        auto s = take(n);
        uint64_t v = 0;
        for (uint8_t b : s) v = (v << 8) | b;
        return v;
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

}  // namespace moss
