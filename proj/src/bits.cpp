#include "rfe/bits.hpp"

#include <algorithm>
#include <cctype>

namespace rfe {

namespace {

int hex_digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("Bits: bad hex digit");
}

char hex_digit(int v) {
    return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
}

}  // namespace

Bits Bits::from_string(std::string_view s) {
    Bits out;
    out.bits_.reserve(s.size());
    for (char c : s) {
        if (c == '0')
            out.bits_.push_back(0);
        else if (c == '1')
            out.bits_.push_back(1);
        else if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        else
            throw std::invalid_argument("Bits: expected a string of 0s and 1s");
    }
    return out;
}

Bits Bits::from_hex(std::string_view hex, std::size_t len) {
    const std::size_t digits = (len + 3) / 4;
    if (hex.size() != digits)
        throw std::invalid_argument("Bits: hex string has wrong length");
    const std::size_t pad = 4 * digits - len;
    Bits out(len);
    std::size_t bit = 0;  // index into the padded 4*digits bit stream
    for (char c : hex) {
        int v = hex_digit_value(c);
        for (int j = 3; j >= 0; --j, ++bit) {
            int b = (v >> j) & 1;
            if (bit < pad) {
                if (b) throw std::invalid_argument("Bits: hex value exceeds bit length");
            } else {
                out.bits_[bit - pad] = static_cast<std::uint8_t>(b);
            }
        }
    }
    return out;
}

Bits Bits::from_uint(std::uint64_t value, std::size_t len) {
    if (len > 64) throw std::invalid_argument("Bits: from_uint limited to 64 bits");
    if (len < 64 && (value >> len) != 0)
        throw std::invalid_argument("Bits: value exceeds bit length");
    Bits out(len);
    for (std::size_t p = 0; p < len; ++p)
        out.bits_[p] = static_cast<std::uint8_t>((value >> (len - 1 - p)) & 1);
    return out;
}

Bits Bits::substr(std::size_t i, std::size_t j) const {
    if (i < 1 || j > bits_.size() || i > j + 1)
        throw std::out_of_range("Bits: bad substring range");
    Bits out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(i - 1),
                     bits_.begin() + static_cast<std::ptrdiff_t>(j));
    return out;
}

Bits Bits::operator^(const Bits& other) const {
    Bits out = *this;
    out ^= other;
    return out;
}

Bits& Bits::operator^=(const Bits& other) {
    if (bits_.size() != other.bits_.size())
        throw std::invalid_argument("Bits: xor length mismatch");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
    return *this;
}

std::size_t Bits::weight() const {
    std::size_t w = 0;
    for (auto b : bits_) w += b;
    return w;
}

std::uint64_t Bits::to_uint() const {
    if (bits_.size() > 64) throw std::invalid_argument("Bits: to_uint limited to 64 bits");
    std::uint64_t v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
}

std::string Bits::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

std::string Bits::to_hex() const {
    const std::size_t digits = (bits_.size() + 3) / 4;
    const std::size_t pad = 4 * digits - bits_.size();
    std::string s;
    s.reserve(digits);
    int nibble = 0, filled = 0;
    for (std::size_t bit = 0; bit < 4 * digits; ++bit) {
        int b = bit < pad ? 0 : bits_[bit - pad];
        nibble = (nibble << 1) | b;
        if (++filled == 4) {
            s.push_back(hex_digit(nibble));
            nibble = 0;
            filled = 0;
        }
    }
    return s;
}

std::vector<std::uint8_t> Bits::pack_bytes() const {
    std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

Bits Bits::unpack_bytes(const std::vector<std::uint8_t>& bytes, std::size_t len) {
    if (bytes.size() != (len + 7) / 8)
        throw std::invalid_argument("Bits: byte buffer has wrong length");
    Bits out(len);
    for (std::size_t i = 0; i < len; ++i)
        out.bits_[i] = (bytes[i / 8] >> (7 - i % 8)) & 1;
    // Trailing pad bits must be zero.
    for (std::size_t i = len; i < bytes.size() * 8; ++i)
        if ((bytes[i / 8] >> (7 - i % 8)) & 1)
            throw std::invalid_argument("Bits: nonzero padding");
    return out;
}

Bits concat(const Bits& a, const Bits& b) {
    Bits out(a.size() + b.size());
    for (std::size_t p = 1; p <= a.size(); ++p) out.set(p, a.get(p));
    for (std::size_t p = 1; p <= b.size(); ++p) out.set(a.size() + p, b.get(p));
    return out;
}

}  // namespace rfe
