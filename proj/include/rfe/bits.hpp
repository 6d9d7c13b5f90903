// Bit strings with the 1-indexed, MSB-first substring convention used
// throughout this library: position 1 is the leftmost (most significant) bit.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rfe {

class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t len) : bits_(len, 0) {}

    static Bits from_string(std::string_view s);
    // Integer-style hex: the string read MSB-first as a number, exactly
    // ceil(len/4) digits, leading pad bits must be zero.
    static Bits from_hex(std::string_view hex, std::size_t len);
    // Low `len` bits of `value`, written MSB-first.
    static Bits from_uint(std::uint64_t value, std::size_t len);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    // pos is 1-indexed from the left.
    int get(std::size_t pos) const {
        check_pos(pos);
        return bits_[pos - 1];
    }
    void set(std::size_t pos, int bit) {
        check_pos(pos);
        bits_[pos - 1] = bit ? 1 : 0;
    }

    // Substring [i..j], 1-indexed, inclusive. i = j+1 yields the empty string.
    Bits substr(std::size_t i, std::size_t j) const;

    Bits operator^(const Bits& other) const;
    Bits& operator^=(const Bits& other);
    bool operator==(const Bits&) const = default;

    std::size_t weight() const;
    bool is_zero() const { return weight() == 0; }

    std::uint64_t to_uint() const;  // requires size() <= 64
    std::string to_string() const;
    std::string to_hex() const;

    // Stream-style packing for file formats: bits MSB-first within each byte,
    // zero padding at the end to a byte boundary.
    std::vector<std::uint8_t> pack_bytes() const;
    static Bits unpack_bytes(const std::vector<std::uint8_t>& bytes, std::size_t len);

private:
    void check_pos(std::size_t pos) const {
        if (pos < 1 || pos > bits_.size())
            throw std::out_of_range("Bits: position out of range");
    }
    std::vector<std::uint8_t> bits_;
};

Bits concat(const Bits& a, const Bits& b);

}  // namespace rfe
