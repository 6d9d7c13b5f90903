#include "rfe/extractor.hpp"

#include <doctest.h>

#include <random>

using namespace rfe;

namespace {

ExtractorParams expect_feasible(ParamResult r) {
    REQUIRE(std::holds_alternative<ExtractorParams>(r));
    return std::get<ExtractorParams>(r);
}

u128 schoolbook_mul(u128 a, u128 b, int k, u128 modulus_low) {
    u128 prod = 0;
    for (int i = 0; i < k; ++i)
        if ((a >> i) & 1)
            for (int j = 0; j < k; ++j)
                if ((b >> j) & 1) prod ^= u128(1) << (i + j);
    for (int d = 2 * k - 2; d >= k; --d)
        if ((prod >> d) & 1) {
            prod ^= u128(1) << d;
            prod ^= modulus_low << (d - k);
        }
    return prod;
}

}  // namespace

TEST_CASE("parameter solver matches the closed forms") {
    auto p = expect_feasible(derive_params(64, 48, Rational(8), Rational(4), Variant::new_v));
    CHECK(p.v == 24);
    CHECK(p.ell == 8);
    CHECK(p.beta == 0);
    CHECK(p.field_degree() == 32);

    auto big = expect_feasible(derive_params(1024, 768, Rational(64), Rational(0), Variant::new_v));
    CHECK(big.ell == 192);
    CHECK(big.achieved_robustness_exponent() == Rational(-64));
    auto base =
        expect_feasible(derive_params(1024, 768, Rational(64), Rational(0), Variant::dkrs_post));
    CHECK(base.v == 448);
    CHECK(base.ell == 128);
    CHECK(base.achieved_robustness_exponent() == Rational(-64));  // v - ell - (n-m)

    auto infeasible = derive_params(64, 30, Rational(4), Rational(0), Variant::new_v);
    REQUIRE(std::holds_alternative<Infeasible>(infeasible));
    CHECK(std::get<Infeasible>(infeasible).constraint.find("uniformity") != std::string::npos);

    CHECK(std::holds_alternative<Infeasible>(
        derive_params(63, 48, Rational(1), Rational(0), Variant::new_v)));  // odd n

    // Rational exponents pass through the exact ceiling.
    auto frac = expect_feasible(derive_params(64, 48, Rational(15, 2), Rational(0), Variant::new_v));
    CHECK(frac.v == 24);  // ceil(16 + 7.5) = 24
}

TEST_CASE("post-application shortening beats raising v only past a threshold") {
    auto get = [](ParamResult r) {
        REQUIRE(std::holds_alternative<ExtractorParams>(r));
        return std::get<ExtractorParams>(r);
    };
    // 2log(1/eps) between (2m-n+d)/3 and (2m-n+3d)/3: uniformity dominates
    // but raising v still extracts more than shortening R.
    auto plain = get(derive_params(1024, 768, Rational(64), Rational(100), Variant::dkrs_post));
    auto improved =
        get(derive_params(1024, 768, Rational(64), Rational(100), Variant::dkrs_improved_post));
    CHECK(plain.ell == 112);
    CHECK(improved.ell == 77);
    // Past the threshold the shortened variant wins.
    auto plain2 = get(derive_params(1024, 768, Rational(64), Rational(120), Variant::dkrs_post));
    auto improved2 =
        get(derive_params(1024, 768, Rational(64), Rational(120), Variant::dkrs_improved_post));
    CHECK(plain2.ell == 32);
    CHECK(improved2.ell == 37);
    // Either way the paired construction extracts more at these sizes.
    auto paired = get(derive_params(1024, 768, Rational(64), Rational(120), Variant::new_short));
    CHECK(paired.ell > improved2.ell);
}

TEST_CASE("shortened variant trims exactly to the uniformity bound") {
    // m < n/2 + 2log(1/eps): the plain variant refuses, the short one trims.
    auto plain = derive_params(64, 40, Rational(2), Rational(5), Variant::new_v);
    REQUIRE(std::holds_alternative<Infeasible>(plain));
    auto p = expect_feasible(derive_params(64, 40, Rational(2), Rational(5), Variant::new_short));
    CHECK(p.v == 26);
    CHECK(p.ell == 2 * 40 - 64 - 2 - 10);  // 4
    CHECK(p.beta == 32 - 26 - 4);          // 2 bits trimmed
    std::mt19937_64 rng(17);
    Bits w = Bits::from_uint(rng(), 64);
    auto res = gen(w, p, rng);
    CHECK(res.key.size() == static_cast<std::size_t>(p.ell));
    auto back = rep(w, res.helper, p);
    REQUIRE(back);
    CHECK(*back == res.key);
}

TEST_CASE("generation follows the construction bit for bit") {
    ExtractorParams p = explicit_layout(8, 2, 2, 0, Variant::new_v);
    // w = a || b with a = 0010, b = 0011; i = 0011:
    // y = i*a + b = 0110 ^ 0011 = 0101.
    Bits w = Bits::from_string("00100011");
    FieldElement i(Bits::from_string("0011"), p.field);
    auto res = gen(w, p, i);
    CHECK(res.helper.sigma == Bits::from_string("01"));
    CHECK(res.key == Bits::from_string("01"));

    // Zero secret gives a zero tag and key regardless of the seed.
    auto zero = gen(Bits(8), p, i);
    CHECK(zero.helper.sigma == Bits(2));
    CHECK(zero.key == Bits(2));

    // Zero seed degenerates to y = b.
    auto degenerate = gen(w, p, FieldElement(u128(0), p.field));
    CHECK(concat(degenerate.helper.sigma, degenerate.key) == Bits::from_string("0011"));
}

TEST_CASE("reproduction accepts the untouched helper and rejects tampering") {
    ExtractorParams p = explicit_layout(12, 2, 4, 0, Variant::new_v);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        Bits w = Bits::from_uint(rng() & 0xfff, 12);
        auto res = gen(w, p, rng);
        auto back = rep(w, res.helper, p);
        REQUIRE(back);
        CHECK(*back == res.key);
        HelperString tampered = res.helper;
        std::size_t pos = rng() % 2 + 1;
        tampered.sigma.set(pos, 1 - tampered.sigma.get(pos));
        CHECK_FALSE(rep(w, tampered, p));
    }
}

TEST_CASE("baseline family computes sigma = [ia]_1^v + b") {
    ExtractorParams p = explicit_layout(8, 2, 4, 0, Variant::dkrs_post);
    CHECK(p.field_degree() == 6);
    Bits w = Bits::from_string("10110101");  // a = 101101, b = 01
    FieldElement i(Bits::from_string("001101"), p.field);
    auto res = dkrs_gen(w, p, i);
    u128 z = schoolbook_mul(0b001101, 0b101101, 6, p.field->modulus_low());
    Bits zbits = FieldElement(z, p.field).bits();
    CHECK(res.helper.sigma == (zbits.substr(1, 2) ^ Bits::from_string("01")));
    CHECK(res.key == zbits.substr(3, 6));
    auto back = dkrs_rep(w, res.helper, p);
    REQUIRE(back);
    CHECK(*back == res.key);
    CHECK(dkrs_gen(Bits(8), p, i).key == Bits(4));

    // The improved variants shorten the same layout.
    auto imp = expect_feasible(
        derive_params(24, 20, Rational(1), Rational(3), Variant::dkrs_improved_pre));
    CHECK(imp.beta == 5);
    std::mt19937_64 rng(29);
    Bits w2 = Bits::from_uint(rng() & 0xffffff, 24);
    auto r2 = dkrs_gen(w2, imp, rng);
    CHECK(r2.key.size() == static_cast<std::size_t>(imp.ell));
    CHECK(dkrs_rep(w2, r2.helper, imp).value() == r2.key);
}

TEST_CASE("degenerate layouts are rejected") {
    CHECK_THROWS_AS(explicit_layout(8, 4, 0, 0, Variant::new_v), std::invalid_argument);
    CHECK_THROWS_AS(explicit_layout(8, 1, 2, 0, Variant::new_v), std::invalid_argument);
    CHECK_THROWS_AS(explicit_layout(8, -1, 5, 0, Variant::new_v), std::invalid_argument);
}

TEST_CASE("family dispatch is strict") {
    ExtractorParams paired = explicit_layout(8, 2, 2, 0, Variant::new_v);
    ExtractorParams base = explicit_layout(8, 2, 4, 0, Variant::dkrs_post);
    std::mt19937_64 rng(1);
    Bits w = Bits::from_uint(rng() & 0xff, 8);
    CHECK_THROWS_AS(dkrs_gen(w, paired, rng), std::invalid_argument);
    CHECK_THROWS_AS(gen(w, base, rng), std::invalid_argument);
    CHECK_THROWS_AS(gen(Bits(7), paired, rng), std::invalid_argument);
    // Seed from the wrong field.
    auto other = FieldSpec::make(6);
    CHECK_THROWS_AS(gen(w, paired, FieldElement(u128(1), other)), std::invalid_argument);
}

TEST_CASE("flat distribution layouts pin the top of b") {
    ExtractorParams p = explicit_layout(8, 2, 2, 0, Variant::new_v);
    p.m = 6;
    FlatDistribution W = flat_for_variant(p);
    CHECK(W.zero_positions == std::vector<std::size_t>{5, 6});
    CHECK(W.support_size() == 64);
    CHECK(W.contains(Bits::from_string("11110011")));
    CHECK_FALSE(W.contains(Bits::from_string("11111011")));
    for (std::uint64_t idx : {0ull, 5ull, 63ull}) {
        Bits w = W.member(idx);
        CHECK(W.contains(w));
    }
    std::mt19937_64 rng(31);
    CHECK(W.contains(W.sample(rng)));
}
