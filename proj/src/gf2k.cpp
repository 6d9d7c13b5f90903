#include "rfe/gf2k.hpp"

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace rfe {

namespace {

// Conventional low-weight irreducible polynomials (low bits; x^k implicit).
struct TableEntry {
    int degree;
    u128 low;
};
constexpr std::array<TableEntry, 27> kModulusTable = {{
    {1, 0x1},      {2, 0x3},      {3, 0x3},   {4, 0x3},   {5, 0x5},   {6, 0x3},
    {7, 0x3},      {8, 0x1b},     {9, 0x3},   {10, 0x9},  {11, 0x5},  {12, 0x9},
    {13, 0x1b},    {14, 0x21},    {15, 0x3},  {16, 0x2b}, {18, 0x9},  {20, 0x9},
    {24, 0x1b},    {32, 0x8d},    {40, 0x39}, {48, 0x2d}, {64, 0x1b}, {95, 0x801},
    {96, 0x641},   {127, 0x3},    {128, 0x87},
}};

int poly_degree(u128 a) {
    int d = -1;
    while (a) {
        ++d;
        a >>= 1;
    }
    return d;
}

// a mod d over GF(2)[x]; both of degree <= 127.
u128 poly_mod(u128 a, u128 d) {
    int dd = poly_degree(d);
    int da = poly_degree(a);
    while (da >= dd) {
        a ^= d << (da - dd);
        da = poly_degree(a);
    }
    return a;
}

// (x^degree + modulus_low) mod d, for d of degree >= 1.
u128 full_poly_mod(int degree, u128 modulus_low, u128 d) {
    u128 r = 1;  // x^0
    for (int i = 0; i < degree; ++i) {
        r <<= 1;
        if (poly_degree(r) >= poly_degree(d)) r ^= d;
    }
    return r ^ poly_mod(modulus_low, d);
}

u128 poly_gcd(u128 a, u128 b) {
    while (b) {
        u128 r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

// Carry-less multiply mod (x^degree + modulus_low); plain shift-and-reduce.
u128 mulmod(u128 a, u128 b, int degree, u128 modulus_low, u128 mask) {
    u128 r = 0;
    const u128 top = u128(1) << (degree - 1);
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        bool carry = (a & top) != 0;
        a = (a << 1) & mask;
        if (carry) a ^= modulus_low;
    }
    return r;
}

std::vector<int> prime_factors(int n) {
    std::vector<int> ps;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

bool is_irreducible_poly(int degree, u128 modulus_low) {
    if (degree < 1 || degree > 128) return false;
    if ((modulus_low & 1) == 0) return degree == 0;  // divisible by x
    if (degree == 1) return true;
    if (degree <= 16) {
        // Trial division by every polynomial of degree 1..degree/2.
        u128 f_low = modulus_low;
        for (u128 d = 2; poly_degree(d) <= degree / 2; ++d) {
            if (full_poly_mod(degree, f_low, d) == 0) return false;
        }
        return true;
    }
    // Rabin: x^(2^degree) == x mod f, and for each prime p | degree,
    // gcd(x^(2^(degree/p)) - x, f) == 1.
    const u128 mask = (degree == 128) ? ~u128(0) : ((u128(1) << degree) - 1);
    auto frobenius = [&](int times) {
        u128 t = 2;  // x
        for (int i = 0; i < times; ++i) t = mulmod(t, t, degree, modulus_low, mask);
        return t;
    };
    if (frobenius(degree) != 2) return false;
    for (int p : prime_factors(degree)) {
        u128 u = frobenius(degree / p) ^ 2;
        if (u == 0) return false;
        // gcd(u, f): reduce f by u first (f has degree `degree`, u less).
        u128 r = full_poly_mod(degree, modulus_low, u);
        if (poly_gcd(u, r) != 1) return false;
    }
    return true;
}

u128 default_modulus_low(int degree) {
    if (degree < 1 || degree > 128)
        throw std::invalid_argument("default_modulus_low: degree must be in 1..128");
    for (const auto& e : kModulusTable)
        if (e.degree == degree) return e.low;
    // Lexicographically smallest irreducible for degrees off the table.
    for (u128 low = 1;; low += 2)
        if (is_irreducible_poly(degree, low)) return low;
}

FieldSpec::FieldSpec(int degree, u128 modulus_low, Basis basis)
    : degree_(degree), modulus_low_(modulus_low), basis_(basis) {
    mask_ = (degree == 128) ? ~u128(0) : ((u128(1) << degree) - 1);
    if (degree <= 8) {
        const std::size_t size = std::size_t(1) << degree;
        mul_table_.resize(size * size);
        for (std::size_t a = 0; a < size; ++a)
            for (std::size_t b = 0; b < size; ++b) {
                u128 std_a = to_standard_raw(u128(a));
                u128 std_b = to_standard_raw(u128(b));
                u128 p = mulmod(std_a, std_b, degree_, modulus_low_, mask_);
                mul_table_[a * size + b] = static_cast<std::uint8_t>(from_standard_raw(p));
            }
    }
}

std::shared_ptr<const FieldSpec> FieldSpec::make(int degree, Basis basis) {
    return make_with_modulus(degree, default_modulus_low(degree), basis);
}

std::shared_ptr<const FieldSpec> FieldSpec::make_with_modulus(int degree, u128 modulus_low,
                                                              Basis basis) {
    if (degree < 1 || degree > 128)
        throw std::invalid_argument("FieldSpec: degree must be in 1..128");
    if (basis == Basis::parity_split && degree % 2 != 0)
        throw std::invalid_argument("FieldSpec: parity-split basis requires even degree");
    u128 mask = (degree == 128) ? ~u128(0) : ((u128(1) << degree) - 1);
    if ((modulus_low & ~mask) != 0)
        throw std::invalid_argument("FieldSpec: modulus low part exceeds degree");

    // Specs are immutable and small (the dense table exists only for
    // degree <= 8), so identical requests share one instance.
    using Key = std::tuple<int, std::uint64_t, std::uint64_t, int>;
    static std::mutex cache_mutex;
    static std::map<Key, std::shared_ptr<const FieldSpec>> cache;
    Key key{degree, static_cast<std::uint64_t>(modulus_low >> 64),
            static_cast<std::uint64_t>(modulus_low), static_cast<int>(basis)};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    if (!is_irreducible_poly(degree, modulus_low))
        throw std::invalid_argument("FieldSpec: modulus is not irreducible");
    auto spec = std::shared_ptr<const FieldSpec>(new FieldSpec(degree, modulus_low, basis));
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(key, spec).first->second;
}

std::string FieldSpec::modulus_hex() const {
    Bits full(static_cast<std::size_t>(degree_) + 1);
    full.set(1, 1);  // x^degree
    for (int j = 0; j < degree_; ++j)
        full.set(static_cast<std::size_t>(degree_ + 1 - j), (modulus_low_ >> j) & 1 ? 1 : 0);
    return full.to_hex();
}

std::string FieldSpec::id() const {
    return "gf2^" + std::to_string(degree_) + "/" + modulus_hex() + "/" +
           (basis_ == Basis::standard ? "standard" : "parity-split");
}

u128 FieldSpec::mul_standard(u128 a, u128 b) const {
    return mulmod(a, b, degree_, modulus_low_, mask_);
}

u128 FieldSpec::to_standard_raw(u128 a) const {
    if (basis_ == Basis::standard) return a;
    // Split word machine bit b holds coefficient of x^(2b-k+1) (top half)
    // or x^(2b) (bottom half).
    const int half = degree_ / 2;
    u128 out = 0;
    for (int b = 0; b < degree_; ++b) {
        if ((a >> b) & 1) {
            int e = b >= half ? 2 * b - degree_ + 1 : 2 * b;
            out |= u128(1) << e;
        }
    }
    return out;
}

u128 FieldSpec::from_standard_raw(u128 a) const {
    if (basis_ == Basis::standard) return a;
    const int half = degree_ / 2;
    u128 out = 0;
    for (int b = 0; b < degree_; ++b) {
        int e = b >= half ? 2 * b - degree_ + 1 : 2 * b;
        if ((a >> e) & 1) out |= u128(1) << b;
    }
    return out;
}

u128 FieldSpec::mul_raw(u128 a, u128 b) const {
    if (basis_ == Basis::standard) return mul_standard(a, b);
    return from_standard_raw(mul_standard(to_standard_raw(a), to_standard_raw(b)));
}

u128 FieldSpec::inv_raw(u128 a) const {
    if (a == 0) throw std::invalid_argument("FieldSpec: inverse of zero");
    if (degree_ == 1) return 1;
    u128 std_a = to_standard_raw(a);
    // a^(2^k - 2): square-and-multiply over the exponent 111...10.
    u128 result = 1;
    u128 base = std_a;
    for (int bit = 1; bit < degree_; ++bit) {
        base = mul_standard(base, base);          // base = a^(2^bit)
        result = mul_standard(result, base);
    }
    return from_standard_raw(result);
}

u128 FieldSpec::div_raw(u128 a, u128 b) const {
    return mul_raw(a, inv_raw(b));
}

u128 FieldSpec::x_element_raw() const {
    return from_standard_raw(u128(2));
}

u128 FieldSpec::div_by_x_raw(u128 a) const {
    return mul_raw(a, inv_raw(x_element_raw()));
}

FieldElement::FieldElement(u128 raw, FieldSpecPtr spec) : raw_(raw), spec_(std::move(spec)) {
    if (!spec_) throw std::invalid_argument("FieldElement: null spec");
    if ((raw_ & ~spec_->mask()) != 0)
        throw std::invalid_argument("FieldElement: value exceeds field degree");
}

FieldElement::FieldElement(const Bits& bits, FieldSpecPtr spec) : spec_(std::move(spec)) {
    if (!spec_) throw std::invalid_argument("FieldElement: null spec");
    if (bits.size() != static_cast<std::size_t>(spec_->degree()))
        throw std::invalid_argument("FieldElement: bit string length != field degree");
    raw_ = 0;
    for (std::size_t p = 1; p <= bits.size(); ++p)
        if (bits.get(p)) raw_ |= u128(1) << (bits.size() - p);
}

Bits FieldElement::bits() const {
    const auto k = static_cast<std::size_t>(spec_->degree());
    Bits out(k);
    for (std::size_t p = 1; p <= k; ++p)
        if ((raw_ >> (k - p)) & 1) out.set(p, 1);
    return out;
}

static void require_same_spec(const FieldElement& x, const FieldElement& y) {
    if (!x.spec() || !y.spec() || !x.spec()->same_structure(*y.spec()))
        throw std::invalid_argument("field elements belong to different specs");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_spec(*this, o);
    return FieldElement(raw_ ^ o.raw_, spec_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_spec(*this, o);
    return FieldElement(spec_->mul_raw(raw_, o.raw_), spec_);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    require_same_spec(*this, o);
    return FieldElement(spec_->div_raw(raw_, o.raw_), spec_);
}

bool FieldElement::operator==(const FieldElement& o) const {
    return spec_ && o.spec_ && spec_->same_structure(*o.spec_) && raw_ == o.raw_;
}

FieldElement add(const FieldElement& x, const FieldElement& y) { return x + y; }
FieldElement mul(const FieldElement& x, const FieldElement& y) { return x * y; }

FieldElement inv(const FieldElement& x) {
    return FieldElement(x.spec()->inv_raw(x.raw()), x.spec());
}

FieldElement div(const FieldElement& x, const FieldElement& y) { return x / y; }

FieldElement div_by_x(const FieldElement& z) {
    return FieldElement(z.spec()->div_by_x_raw(z.raw()), z.spec());
}

FieldElement change_basis(const FieldElement& x, Basis target) {
    if (x.spec()->basis() == target) return x;
    auto sibling = FieldSpec::make_with_modulus(x.spec()->degree(), x.spec()->modulus_low(), target);
    u128 std_word = x.spec()->to_standard_raw(x.raw());
    return FieldElement(sibling->from_standard_raw(std_word), sibling);
}

FieldElement eval_poly(const std::vector<FieldElement>& coeffs, const FieldElement& point) {
    FieldElement acc(u128(0), point.spec());
    for (const auto& c : coeffs) acc = acc * point + c;
    return acc;
}

}  // namespace rfe
