#include "rfe/helper_io.hpp"

#include <stdexcept>

namespace rfe {

namespace {

constexpr char kMagic[8] = {'R', 'F', 'E', 'X', 'T', 'v', '0', '1'};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

struct Reader {
    const std::vector<std::uint8_t>& buf;
    std::size_t pos = 0;

    std::uint8_t u8() {
        if (pos + 1 > buf.size()) throw std::invalid_argument("helper file truncated");
        return buf[pos++];
    }
    std::uint16_t u16() {
        std::uint16_t hi = u8();
        return static_cast<std::uint16_t>((hi << 8) | u8());
    }
    std::vector<std::uint8_t> bytes(std::size_t count) {
        if (pos + count > buf.size()) throw std::invalid_argument("helper file truncated");
        std::vector<std::uint8_t> out(buf.begin() + static_cast<std::ptrdiff_t>(pos),
                                      buf.begin() + static_cast<std::ptrdiff_t>(pos + count));
        pos += count;
        return out;
    }
};

void put_bits(std::vector<std::uint8_t>& out, const Bits& b) {
    auto packed = b.pack_bytes();
    out.insert(out.end(), packed.begin(), packed.end());
}

}  // namespace

HelperKind helper_kind_of(Variant v) {
    switch (v) {
        case Variant::new_v: return HelperKind::new_v;
        case Variant::new_short: return HelperKind::new_short;
        case Variant::dkrs_pre: return HelperKind::dkrs_pre;
        case Variant::dkrs_post: return HelperKind::dkrs_post;
        case Variant::dkrs_improved_pre: return HelperKind::dkrs_improved_pre;
        case Variant::dkrs_improved_post: return HelperKind::dkrs_improved_post;
    }
    throw std::logic_error("helper_kind_of: unknown variant");
}

int HelperFile::field_degree() const {
    switch (kind) {
        case HelperKind::new_v:
        case HelperKind::new_short:
            return n / 2;
        case HelperKind::dkrs_pre:
        case HelperKind::dkrs_post:
        case HelperKind::dkrs_improved_pre:
        case HelperKind::dkrs_improved_post:
            return n - v;
        case HelperKind::fuzzy: {
            int n_prime = n - k;
            if (n_prime % 2 != 0) n_prime -= 1;  // truncated complement
            return n_prime / 2;
        }
    }
    throw std::invalid_argument("helper file: unknown variant tag");
}

HelperFile to_helper_file(const HelperString& helper, const ExtractorParams& params) {
    HelperFile h;
    h.kind = helper_kind_of(params.variant);
    h.n = static_cast<std::uint16_t>(params.n);
    h.v = static_cast<std::uint16_t>(params.v);
    h.ell = static_cast<std::uint16_t>(params.ell);
    h.i = helper.i.bits();
    h.sigma = helper.sigma;
    return h;
}

HelperFile to_helper_file(const FuzzyHelper& helper, const FuzzyParams& params) {
    HelperFile h;
    h.kind = HelperKind::fuzzy;
    h.n = static_cast<std::uint16_t>(params.n);
    h.k = static_cast<std::uint16_t>(params.k);
    h.t = static_cast<std::uint16_t>(params.t);
    h.v = static_cast<std::uint16_t>(params.v);
    h.ell = static_cast<std::uint16_t>(params.ell);
    h.code_key = params.code->key();
    h.s = helper.s;
    h.i = helper.i.bits();
    h.sigma = helper.sigma;
    return h;
}

std::vector<std::uint8_t> serialize_helper(const HelperFile& h) {
    std::vector<std::uint8_t> out(kMagic, kMagic + sizeof(kMagic));
    out.push_back(static_cast<std::uint8_t>(h.kind));
    put_u16(out, h.n);
    put_u16(out, h.k);
    put_u16(out, h.t);
    put_u16(out, h.v);
    put_u16(out, h.ell);
    if (h.code_key.size() > 0xffff) throw std::invalid_argument("code key too long");
    put_u16(out, static_cast<std::uint16_t>(h.code_key.size()));
    out.insert(out.end(), h.code_key.begin(), h.code_key.end());
    if (h.kind == HelperKind::fuzzy) put_bits(out, h.s);
    put_bits(out, h.i);
    put_bits(out, h.sigma);
    return out;
}

HelperFile parse_helper(const std::vector<std::uint8_t>& bytes) {
    Reader r{bytes};
    auto magic = r.bytes(sizeof(kMagic));
    if (!std::equal(magic.begin(), magic.end(), kMagic))
        throw std::invalid_argument("helper file: bad magic");
    HelperFile h;
    std::uint8_t tag = r.u8();
    switch (tag) {
        case 0x01: h.kind = HelperKind::new_v; break;
        case 0x02: h.kind = HelperKind::new_short; break;
        case 0x11: h.kind = HelperKind::dkrs_pre; break;
        case 0x12: h.kind = HelperKind::dkrs_post; break;
        case 0x13: h.kind = HelperKind::dkrs_improved_pre; break;
        case 0x14: h.kind = HelperKind::dkrs_improved_post; break;
        case 0x21: h.kind = HelperKind::fuzzy; break;
        default: throw std::invalid_argument("helper file: unknown variant tag");
    }
    h.n = r.u16();
    h.k = r.u16();
    h.t = r.u16();
    h.v = r.u16();
    h.ell = r.u16();
    std::size_t key_len = r.u16();
    auto key_bytes = r.bytes(key_len);
    h.code_key.assign(key_bytes.begin(), key_bytes.end());
    const bool fuzzy = h.kind == HelperKind::fuzzy;
    if (fuzzy != !h.code_key.empty())
        throw std::invalid_argument("helper file: code key presence mismatch");
    if (fuzzy) h.s = Bits::unpack_bytes(r.bytes((h.k + 7) / 8), h.k);
    int degree = h.field_degree();
    if (degree < 1 || degree > 128) throw std::invalid_argument("helper file: bad field degree");
    h.i = Bits::unpack_bytes(r.bytes((static_cast<std::size_t>(degree) + 7) / 8),
                             static_cast<std::size_t>(degree));
    h.sigma = Bits::unpack_bytes(r.bytes((h.v + 7) / 8), h.v);
    if (r.pos != bytes.size()) throw std::invalid_argument("helper file: trailing bytes");
    return h;
}

}  // namespace rfe
