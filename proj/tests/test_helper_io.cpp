#include "rfe/helper_io.hpp"

#include <doctest.h>

#include <random>

using namespace rfe;

TEST_CASE("helper byte layout is pinned") {
    ExtractorParams p = explicit_layout(8, 2, 2, 0, Variant::new_v);
    HelperString helper{FieldElement(u128(0b1010), p.field), Bits::from_string("01")};
    auto bytes = serialize_helper(to_helper_file(helper, p));
    // magic || tag || n k t v ell || key length || i || sigma
    const std::uint8_t expected[] = {'R', 'F', 'E', 'X', 'T', 'v', '0', '1',
                                     0x01,        // variant tag
                                     0x00, 0x08,  // n
                                     0x00, 0x00,  // k
                                     0x00, 0x00,  // t
                                     0x00, 0x02,  // v
                                     0x00, 0x02,  // ell
                                     0x00, 0x00,  // empty code key
                                     0xa0,        // i = 1010 padded
                                     0x40};       // sigma = 01 padded
    REQUIRE(bytes.size() == sizeof(expected));
    for (std::size_t i = 0; i < bytes.size(); ++i) CHECK(bytes[i] == expected[i]);
    HelperFile parsed = parse_helper(bytes);
    CHECK(parsed == to_helper_file(helper, p));
}

TEST_CASE("malformed helpers are rejected") {
    ExtractorParams p = explicit_layout(8, 2, 2, 0, Variant::new_v);
    HelperString helper{FieldElement(u128(0b1010), p.field), Bits::from_string("01")};
    auto good = serialize_helper(to_helper_file(helper, p));

    auto bad_magic = good;
    bad_magic[0] = 'Q';
    CHECK_THROWS_AS(parse_helper(bad_magic), std::invalid_argument);

    auto bad_tag = good;
    bad_tag[8] = 0x5e;
    CHECK_THROWS_AS(parse_helper(bad_tag), std::invalid_argument);

    auto trailing = good;
    trailing.push_back(0);
    CHECK_THROWS_AS(parse_helper(trailing), std::invalid_argument);

    auto truncated = good;
    truncated.pop_back();
    CHECK_THROWS_AS(parse_helper(truncated), std::invalid_argument);
}

TEST_CASE("fuzzy helpers carry the code key and sketch") {
    auto code = make_code_from_key("hamming-7-1");
    FuzzyParams params = fuzzy_layout(code, 1, 1);
    std::mt19937_64 rng(13);
    auto res = fuzzy_gen(Bits::from_uint(0b1011001, 7), params, rng);
    HelperFile file = to_helper_file(res.helper, params);
    CHECK(file.code_key == "hamming-7-1");
    auto bytes = serialize_helper(file);
    HelperFile parsed = parse_helper(bytes);
    CHECK(parsed == file);
    CHECK(parsed.field_degree() == 2);
    CHECK(parsed.s == res.helper.s);
}
