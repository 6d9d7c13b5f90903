#include "rfe/gf2k.hpp"

#include <doctest.h>

#include <random>

using namespace rfe;

namespace {

// Independent schoolbook route: expand the full product coefficient by
// coefficient, then reduce by long division against the full modulus.
u128 schoolbook_mul(u128 a, u128 b, int k, u128 modulus_low) {
    // Product has degree <= 2k-2 < 256; track it in two 128-bit halves.
    u128 lo = 0, hi = 0;
    for (int i = 0; i < k; ++i) {
        if (!((a >> i) & 1)) continue;
        for (int j = 0; j < k; ++j) {
            if (!((b >> j) & 1)) continue;
            int d = i + j;
            if (d < 128)
                lo ^= u128(1) << d;
            else
                hi ^= u128(1) << (d - 128);
        }
    }
    auto bit_at = [&](int d) -> int {
        return d < 128 ? static_cast<int>((lo >> d) & 1) : static_cast<int>((hi >> (d - 128)) & 1);
    };
    auto flip = [&](int d) {
        if (d < 128)
            lo ^= u128(1) << d;
        else
            hi ^= u128(1) << (d - 128);
    };
    for (int d = 2 * k - 2; d >= k; --d) {
        if (!bit_at(d)) continue;
        flip(d);                         // x^k term of the shifted modulus
        for (int j = 0; j < k; ++j)      // low part, shifted by d-k
            if ((modulus_low >> j) & 1) flip(d - k + j);
    }
    return lo;
}

FieldElement fe(std::uint64_t raw, const FieldSpecPtr& spec) {
    return FieldElement(u128(raw), spec);
}

}  // namespace

TEST_CASE("addition is exclusive-or in both bases") {
    auto F = FieldSpec::make(4);
    CHECK((fe(0b0011, F) + fe(0b0101, F)).raw() == 0b0110);
    CHECK((fe(0b0011, F) + fe(0b0011, F)).raw() == 0);
    CHECK((fe(0b1001, F) + fe(0, F)).raw() == 0b1001);
    auto Fs = FieldSpec::make(4, Basis::parity_split);
    for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b)
            CHECK((fe(a, Fs) + fe(b, Fs)).raw() == (a ^ b));
}

TEST_CASE("multiplication matches the schoolbook oracle") {
    auto F = FieldSpec::make(4);
    CHECK(F->modulus_low() == 0x3);  // x^4 + x + 1
    CHECK((fe(0b0010, F) * fe(0b0011, F)).raw() == 0b0110);
    for (std::uint64_t a = 0; a < 16; ++a) {
        CHECK((fe(a, F) * fe(1, F)).raw() == a);
        CHECK((fe(a, F) * fe(0, F)).raw() == 0);
        for (std::uint64_t b = 0; b < 16; ++b)
            CHECK((fe(a, F) * fe(b, F)).raw() == schoolbook_mul(a, b, 4, 0x3));
    }
    // Two different degree-8 moduli; the axioms cannot depend on the choice.
    for (u128 mod : {u128(0x1b), u128(0x1d)}) {
        auto F8 = FieldSpec::make_with_modulus(8, mod);
        std::mt19937_64 rng(7);
        for (int t = 0; t < 2000; ++t) {
            std::uint64_t a = rng() & 0xff, b = rng() & 0xff;
            CHECK(F8->mul_raw(a, b) == schoolbook_mul(a, b, 8, mod));
        }
    }
}

TEST_CASE("inverse and division") {
    auto F = FieldSpec::make(4);
    CHECK(inv(fe(1, F)).raw() == 1);
    // Exhaustive-search oracle for the inverse of x.
    std::uint64_t found = 0;
    for (std::uint64_t h = 1; h < 16; ++h)
        if (schoolbook_mul(0b0010, h, 4, 0x3) == 1) found = h;
    CHECK(found == 0b1001);
    CHECK(inv(fe(0b0010, F)).raw() == 0b1001);
    CHECK_THROWS_AS(inv(fe(0, F)), std::invalid_argument);
    CHECK_THROWS_AS(fe(1, F) / fe(0, F), std::invalid_argument);

    auto F8 = FieldSpec::make(8);
    for (std::uint64_t a = 1; a < 256; ++a)
        CHECK((fe(a, F8) * inv(fe(a, F8))).raw() == 1);
}

TEST_CASE("division by x") {
    auto F = FieldSpec::make(4);
    FieldElement x_elem(F->x_element_raw(), F);
    CHECK(div_by_x(x_elem).raw() == 1);
    // (x+1)/x via the schoolbook route: multiply by the inverse found above.
    CHECK(schoolbook_mul(0b0011, 0b1001, 4, 0x3) == 0b1000);
    CHECK(div_by_x(fe(0b0011, F)).raw() == 0b1000);
    auto F8 = FieldSpec::make(8);
    for (std::uint64_t z = 0; z < 256; ++z)
        CHECK((div_by_x(fe(z, F8)) * FieldElement(F8->x_element_raw(), F8)).raw() == z);
}

TEST_CASE("basis change is the documented permutation") {
    auto F = FieldSpec::make(4);
    // (c3 c2 c1 c0) -> (c3 c1 c2 c0)
    CHECK(change_basis(fe(0b1000, F), Basis::parity_split).raw() == 0b1000);
    CHECK(change_basis(fe(0b0100, F), Basis::parity_split).raw() == 0b0010);
    CHECK(change_basis(fe(0b0010, F), Basis::parity_split).raw() == 0b0100);
    CHECK(change_basis(fe(0b0001, F), Basis::parity_split).raw() == 0b0001);
    CHECK(change_basis(fe(0, F), Basis::parity_split).raw() == 0);
    for (std::uint64_t x = 0; x < 16; ++x) {
        FieldElement e = fe(x, F);
        CHECK(change_basis(change_basis(e, Basis::parity_split), Basis::standard) == e);
    }
    CHECK_THROWS_AS(FieldSpec::make(5, Basis::parity_split), std::invalid_argument);
}

TEST_CASE("polynomial evaluation") {
    auto F = FieldSpec::make(4);
    CHECK(eval_poly({}, fe(0b0111, F)).raw() == 0);
    CHECK(eval_poly({fe(0b1010, F)}, fe(0b0111, F)).raw() == 0b1010);
    // x + 0b0010 at 0b0011: 3 ^ 2 = 1.
    CHECK(eval_poly({fe(1, F), fe(0b0010, F)}, fe(0b0011, F)).raw() == 0b0001);
    // Degree-2 cross-check against the schoolbook route.
    for (std::uint64_t p = 0; p < 16; ++p) {
        std::uint64_t direct = schoolbook_mul(schoolbook_mul(p, p, 4, 0x3), 0b0101, 4, 0x3) ^
                               schoolbook_mul(p, 0b0010, 4, 0x3) ^ 0b1100;
        CHECK(eval_poly({fe(0b0101, F), fe(0b0010, F), fe(0b1100, F)}, fe(p, F)).raw() == direct);
    }
}

TEST_CASE("construction rejects bad inputs") {
    CHECK_THROWS_AS(FieldSpec::make_with_modulus(4, 0x1), std::invalid_argument);  // (x+1)^4
    CHECK_THROWS_AS(FieldSpec::make_with_modulus(4, 0x5), std::invalid_argument);  // (x^2+x+1)^2
    CHECK_THROWS_AS(FieldSpec::make(0), std::invalid_argument);
    auto F4 = FieldSpec::make(4);
    auto F8 = FieldSpec::make(8);
    CHECK_THROWS_AS(fe(3, F4) + fe(3, F8), std::invalid_argument);
    CHECK_THROWS_AS(FieldElement(Bits::from_string("101"), F4), std::invalid_argument);
}

TEST_CASE("pinned modulus table stays irreducible") {
    for (int k : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 24, 32, 48, 64, 95, 96, 128})
        CHECK(is_irreducible_poly(k, default_modulus_low(k)));
    CHECK(default_modulus_low(4) == 0x3);
    CHECK(default_modulus_low(8) == 0x1b);
    CHECK(default_modulus_low(95) == 0x801);
    CHECK(default_modulus_low(128) == 0x87);
    // Degrees off the table go through the lexicographic search.
    CHECK(is_irreducible_poly(17, default_modulus_low(17)));
    CHECK(is_irreducible_poly(95, 0x801));
}

TEST_CASE("spec identity names degree, modulus, and basis") {
    CHECK(FieldSpec::make(4)->id() == "gf2^4/13/standard");
    CHECK(FieldSpec::make(8)->id() == "gf2^8/11b/standard");
    CHECK(FieldSpec::make(4, Basis::parity_split)->id() == "gf2^4/13/parity-split");
    CHECK(FieldSpec::make(4)->modulus_hex() == "13");
}

TEST_CASE("element and bit-string views agree") {
    auto F = FieldSpec::make(6);
    FieldElement e(Bits::from_string("101101"), F);
    CHECK(e.raw() == 0b101101);
    CHECK(e.bits().to_string() == "101101");
    CHECK(e.to_hex() == "2d");
    std::mt19937_64 rng(3);
    auto F95 = FieldSpec::make(95);
    for (int t = 0; t < 50; ++t) {
        u128 raw = (u128(rng()) << 64 | rng()) & F95->mask();
        FieldElement big(raw, F95);
        CHECK(FieldElement(big.bits(), F95) == big);
    }
}
