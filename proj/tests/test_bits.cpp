#include "rfe/bits.hpp"

#include <doctest.h>

using rfe::Bits;
using rfe::concat;

TEST_CASE("bit strings follow the 1-indexed MSB-first convention") {
    Bits b = Bits::from_string("10110");
    CHECK(b.size() == 5);
    CHECK(b.get(1) == 1);
    CHECK(b.get(2) == 0);
    CHECK(b.get(5) == 0);
    CHECK(b.substr(1, 3) == Bits::from_string("101"));
    CHECK(b.substr(4, 5) == Bits::from_string("10"));
    CHECK(b.substr(3, 2).size() == 0);  // empty range
    CHECK(b.to_uint() == 22);
    CHECK(Bits::from_uint(22, 5) == b);
}

TEST_CASE("hex serialization pads to the nibble like an integer") {
    CHECK(Bits::from_string("10110").to_hex() == "16");
    CHECK(Bits::from_hex("16", 5) == Bits::from_string("10110"));
    CHECK(Bits::from_string("1111").to_hex() == "f");
    CHECK_THROWS_AS(Bits::from_hex("ff", 5), std::invalid_argument);  // exceeds 5 bits
    CHECK_THROWS_AS(Bits::from_hex("f", 8), std::invalid_argument);   // wrong digit count
}

TEST_CASE("xor and weight") {
    Bits a = Bits::from_string("1010");
    Bits b = Bits::from_string("0110");
    CHECK((a ^ b) == Bits::from_string("1100"));
    CHECK(a.weight() == 2);
    CHECK_THROWS_AS(a ^ Bits::from_string("111"), std::invalid_argument);
}

TEST_CASE("byte packing is MSB-first with a zero tail") {
    Bits b = Bits::from_string("101100111");  // 9 bits
    auto bytes = b.pack_bytes();
    REQUIRE(bytes.size() == 2);
    CHECK(bytes[0] == 0xb3);
    CHECK(bytes[1] == 0x80);
    CHECK(Bits::unpack_bytes(bytes, 9) == b);
    bytes[1] |= 0x01;  // nonzero padding must be rejected
    CHECK_THROWS_AS(Bits::unpack_bytes(bytes, 9), std::invalid_argument);
}

TEST_CASE("concatenation") {
    CHECK(concat(Bits::from_string("10"), Bits::from_string("011")) ==
          Bits::from_string("10011"));
}
