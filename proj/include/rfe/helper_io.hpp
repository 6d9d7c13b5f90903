// Bit-exact binary layout of the public helper value:
//   magic "RFEXTv01" | variant tag (1 byte) | n k t v ell (u16 big-endian)
//   | code key (u16 length + bytes, empty when errorless)
//   | s (k bits, absent when errorless) | i | sigma
// Bit fields are packed MSB-first and zero-padded to a byte boundary.
#pragma once

#include "rfe/bits.hpp"
#include "rfe/extractor.hpp"
#include "rfe/fuzzy.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rfe {

enum class HelperKind : std::uint8_t {
    new_v = 0x01,
    new_short = 0x02,
    dkrs_pre = 0x11,
    dkrs_post = 0x12,
    dkrs_improved_pre = 0x13,
    dkrs_improved_post = 0x14,
    fuzzy = 0x21,
};

HelperKind helper_kind_of(Variant v);

struct HelperFile {
    HelperKind kind = HelperKind::new_v;
    std::uint16_t n = 0, k = 0, t = 0, v = 0, ell = 0;
    std::string code_key;  // empty when errorless
    Bits s;                // empty when errorless
    Bits i;                // field element bits; length derived from the layout
    Bits sigma;

    // Field degree implied by the layout (n/2, n-v, or n'(/2) with the odd
    // complement truncated).
    int field_degree() const;

    bool operator==(const HelperFile&) const = default;
};

HelperFile to_helper_file(const HelperString& helper, const ExtractorParams& params);
HelperFile to_helper_file(const FuzzyHelper& helper, const FuzzyParams& params);

std::vector<std::uint8_t> serialize_helper(const HelperFile& h);
HelperFile parse_helper(const std::vector<std::uint8_t>& bytes);  // throws on malformed input

}  // namespace rfe
