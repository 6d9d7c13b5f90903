#include "rfe/fuzzy.hpp"

#include <doctest.h>

#include <random>

using namespace rfe;

namespace {

Int binom_row_sum(int n, int t) {
    // Pascal-recurrence route, independent of the product formula.
    std::vector<Int> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<Int> next(static_cast<std::size_t>(i) + 1, 0);
        next[0] = 1;
        next[static_cast<std::size_t>(i)] = 1;
        for (int j = 1; j < i; ++j)
            next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] +
                                                row[static_cast<std::size_t>(j)];
        row = std::move(next);
    }
    Int acc = 0;
    for (int j = 0; j <= t; ++j) acc += row[static_cast<std::size_t>(j)];
    return acc;
}

}  // namespace

TEST_CASE("hamming ball volume is exact") {
    CHECK(hamming_ball(10, 0).volume == 1);
    CHECK(hamming_ball(7, 1).volume == 8);
    CHECK(hamming_ball(7, 1).log2_value == doctest::Approx(3.0));
    auto big = hamming_ball(255, 8);
    CHECK(big.volume == binom_row_sum(255, 8));
    CHECK(big.volume == Int("410032402903457"));
    CHECK(big.within_t_log_bound);
    CHECK(big.within_entropy_bound);
    CHECK_THROWS_AS(hamming_ball(7, 8), std::invalid_argument);
}

TEST_CASE("sketch padding and chunking") {
    auto F3 = FieldSpec::make(3);
    // k = 10, n' = 6: L = 4 chunks of 3 bits, zero padding at the tail.
    Bits s = Bits::from_string("1011001110");
    auto parts = pad_and_split_sketch(s, 6, F3);
    REQUIRE(parts.size() == 4);
    CHECK(parts[0].bits() == Bits::from_string("101"));  // s_3, the first chunk
    CHECK(parts[1].bits() == Bits::from_string("100"));
    CHECK(parts[2].bits() == Bits::from_string("111"));
    CHECK(parts[3].bits() == Bits::from_string("000"));  // includes the two pad bits
    // k = n'/2: L = 2 with an all-zero second chunk.
    auto F2 = FieldSpec::make(2);
    auto halves = pad_and_split_sketch(Bits::from_string("10"), 4, F2);
    REQUIRE(halves.size() == 2);
    CHECK(halves[0].bits() == Bits::from_string("10"));
    CHECK(halves[1].bits() == Bits::from_string("00"));
}

TEST_CASE("tag polynomial evaluation") {
    auto F = FieldSpec::make(4);
    auto z = FieldElement(u128(0), F);
    std::vector<FieldElement> s0 = {z, z};
    // a = 0 kills every term.
    CHECK(mac_poly_eval(s0, FieldElement(u128(5), F), z).raw() == 0);
    // s = 0, i = 0 leaves a^(L+3).
    for (std::uint64_t a = 0; a < 16; ++a) {
        u128 expect = 1;
        for (int e = 0; e < 5; ++e) expect = F->mul_raw(expect, a);
        CHECK(mac_poly_eval(s0, z, FieldElement(u128(a), F)).raw() == expect);
    }
    // Term-by-term oracle at a concrete point: L=2, s=(0001, 0000), i=0010, a=0011.
    FieldElement a(u128(0b0011), F), i(u128(0b0010), F);
    std::vector<FieldElement> s = {FieldElement(u128(0b0001), F), z};
    u128 a2 = F->mul_raw(0b0011, 0b0011);
    u128 a3 = F->mul_raw(a2, 0b0011);
    u128 a5 = F->mul_raw(a2, a3);
    u128 expected = a5 ^ F->mul_raw(a3, 0b0001) ^ F->mul_raw(0b0010, 0b0011);
    CHECK(mac_poly_eval(s, i, a).raw() == expected);
}

TEST_CASE("generation composes the sketch and field routes") {
    // End-to-end vector assembled from two independent oracles: the sketch
    // side by a hand multiplication against the parity-check rows, the tag
    // side term by term in the field.
    auto code = make_code_from_key("hamming-7-1");
    FuzzyParams params = fuzzy_layout(code, 1, 1);
    const auto& F = params.field;
    Bits w = Bits::from_string("1011001");
    FieldElement i(u128(0b11), F);

    auto row_dot = [&](const BitMatrix& M, int r) {
        int acc = 0;
        for (int c = 0; c < 7; ++c) acc ^= M.get(r, c) & w.get(static_cast<std::size_t>(c) + 1);
        return acc;
    };
    Bits s(3), c_bits(4);
    for (int r = 0; r < 3; ++r) s.set(static_cast<std::size_t>(r) + 1, row_dot(code->S(), r));
    for (int r = 0; r < 4; ++r)
        c_bits.set(static_cast<std::size_t>(r) + 1, row_dot(code->S_perp(), r));
    u128 a = FieldElement(c_bits.substr(1, 2), F).raw();
    u128 b = FieldElement(c_bits.substr(3, 4), F).raw();
    // Padded s = s || 0 over 4 bits: chunks s_1 = first 2 bits, s_0 = rest.
    u128 s1 = FieldElement(concat(s, Bits(1)).substr(1, 2), F).raw();
    u128 s0 = FieldElement(concat(s, Bits(1)).substr(3, 4), F).raw();
    u128 a2 = F->mul_raw(a, a);
    u128 a3 = F->mul_raw(a2, a);
    u128 a5 = F->mul_raw(a2, a3);
    u128 y = a5 ^ F->mul_raw(a3, s1) ^ F->mul_raw(a2, s0) ^ F->mul_raw(i.raw(), a) ^ b;
    Bits ybits = FieldElement(y, F).bits();

    auto res = fuzzy_gen(w, params, i);
    CHECK(res.helper.s == s);
    CHECK(res.helper.sigma == ybits.substr(1, 1));
    CHECK(res.key == ybits.substr(2, 2));
}

TEST_CASE("fuzzy generation and reproduction round trip") {
    auto code = make_code_from_key("hamming-7-1");
    FuzzyParams params = fuzzy_layout(code, 1, 1);
    CHECK(params.L == 2);
    CHECK(params.n_prime == 4);

    FieldElement i(u128(0b10), params.field);
    auto zero = fuzzy_gen(Bits(7), params, i);
    CHECK(zero.helper.s == Bits(3));
    CHECK(zero.helper.sigma == Bits(1));
    CHECK(zero.key == Bits(1));

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        Bits w = Bits::from_uint(rng() & 0x7f, 7);
        auto res = fuzzy_gen(w, params, rng);
        Bits wp = w;
        if (rng() & 1) {
            std::size_t p = rng() % 7 + 1;
            wp.set(p, 1 - wp.get(p));
        }
        auto back = fuzzy_rep(wp, res.helper, params);
        REQUIRE(back);
        CHECK(*back == res.key);
        FuzzyHelper bad_sigma = res.helper;
        bad_sigma.sigma.set(1, 1 - bad_sigma.sigma.get(1));
        CHECK_FALSE(fuzzy_rep(wp, bad_sigma, params));
    }
}

TEST_CASE("sketch tampering rejects through the recovered-sketch check") {
    auto code = make_code_from_key("hamming-7-1");
    FuzzyParams params = fuzzy_layout(code, 1, 1);
    std::mt19937_64 rng(43);
    int rejects = 0, accepts = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Bits w = Bits::from_uint(rng() & 0x7f, 7);
        auto res = fuzzy_gen(w, params, rng);
        FuzzyHelper tampered = res.helper;
        std::size_t p = rng() % 3 + 1;
        tampered.s.set(p, 1 - tampered.s.get(p));
        if (fuzzy_rep(w, tampered, params))
            ++accepts;  // forgery got through: possible, but must be rare
        else
            ++rejects;
    }
    CHECK(rejects > accepts);
}

TEST_CASE("offsets from a sketch substitution") {
    auto code = make_code_from_key("hamming-7-1");
    FuzzyParams params = fuzzy_layout(code, 1, 1);
    Bits w = Bits::from_string("1100101");
    Bits s = code->ss(w);
    auto same = offsets_from_delta(Bits(7), s, s, params);
    REQUIRE(same);
    CHECK(same->delta_a.is_zero());
    CHECK(same->delta_b.is_zero());
    // Any in-radius error with the honest sketch cancels exactly.
    for (std::size_t p = 1; p <= 7; ++p) {
        Bits delta(7);
        delta.set(p, 1);
        auto off = offsets_from_delta(delta, s, s, params);
        REQUIRE(off);
        CHECK(off->delta_a.is_zero());
        CHECK(off->delta_b.is_zero());
    }
}

TEST_CASE("fuzzy parameter solver") {
    auto code = make_code_from_key("bch-255-8");
    // n' = 191 is odd: refuse without the truncation rule.
    auto refused = derive_fuzzy_params(code, 255, Rational(8), Rational(0), false);
    REQUIRE(std::holds_alternative<Infeasible>(refused));

    auto derived = derive_fuzzy_params(code, 255, Rational(8), Rational(0), true);
    REQUIRE(std::holds_alternative<FuzzyParams>(derived));
    FuzzyParams p = std::get<FuzzyParams>(derived);
    CHECK(p.n_prime == 190);
    CHECK(p.truncate_c);
    CHECK(p.m == 254);  // one bit of entropy charged for the dropped bit
    CHECK(p.L == 2);
    CHECK(p.field->degree() == 95);
    // v = ceil((n - m) + log2(B*(L+2)) + 8) with log2(B) ~ 48.543.
    CHECK(p.v == 60);
    CHECK(p.beta == 0);
    CHECK(p.ell == 95 - 60);

    // The tiny instance has no room for the solver's tag.
    auto small = derive_fuzzy_params(make_code_from_key("hamming-7-1"), 7, Rational(1),
                                     Rational(0), false);
    REQUIRE(std::holds_alternative<Infeasible>(small));
}

TEST_CASE("layout validation") {
    auto code = make_code_from_key("hamming-7-1");
    CHECK_THROWS_AS(fuzzy_layout(code, 1, 2), std::invalid_argument);  // v + ell > n'/2
    CHECK_THROWS_AS(fuzzy_layout(code, 1, 1, true), std::invalid_argument);  // n' already even
    FuzzyParams params = fuzzy_layout(code, 1, 1);
    std::mt19937_64 rng(3);
    CHECK_THROWS_AS(fuzzy_gen(Bits(6), params, rng), std::invalid_argument);
}
