// Ground truth for the tag polynomial's resistance to offset manipulation:
// the difference g(x) = f_{s,i}(x) - f_{s',i'}(x + da) must be a nonconstant
// polynomial of degree at most L+2, so no value is attained more than L+2
// times. Verified by direct value counting over entire tuple spaces where
// tractable, over the reachable coefficient space otherwise, and by symbolic
// coefficient expansion for the structural claims.
#pragma once

#include "rfe/exact.hpp"
#include "rfe/gf2k.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rfe {

struct MacCheckResult {
    Int cases_checked = 0;
    int max_attainment = 0;
    int bound = 0;  // L + 2
    bool ok = false;
    std::string detail;
};

// Full product over (s, i, s', i', da) with (s, i) != (s', i'); each sketch
// chunk ranges over its entry of `chunk_space` (raw field words).
MacCheckResult mac_attainment_tuples(const FieldSpecPtr& field, int L,
                                     const std::vector<std::vector<std::uint64_t>>& chunk_space);

// All of F for every chunk.
std::vector<std::vector<std::uint64_t>> full_chunk_space(const FieldSpecPtr& field, int L);
// Chunks reachable from real k-bit sketches after zero padding.
std::vector<std::vector<std::uint64_t>> padded_sketch_space(const FieldSpecPtr& field, int L, int k);

// Every monic polynomial of each degree 1..L+2 with zero constant term;
// covers all reachable differences up to value scaling and shifts, which
// leave attainment counts unchanged.
MacCheckResult mac_attainment_coeffspace(const FieldSpecPtr& field, int L);

// Random full tuples, attainment counted over every x.
MacCheckResult mac_attainment_random(const FieldSpecPtr& field, int L, int samples,
                                     std::uint64_t seed);

// Coefficients of g, ascending degree, length L+3 (degrees 0..L+2).
std::vector<std::uint64_t> mac_difference_coeffs(const FieldSpecPtr& field, int L,
                                                 const std::vector<std::uint64_t>& s_desc,
                                                 std::uint64_t i,
                                                 const std::vector<std::uint64_t>& s_prime_desc,
                                                 std::uint64_t i_prime, std::uint64_t da);

// Structural claims checked symbolically: for da != 0 the degree-(L+2)
// coefficient equals da (even L), and g is never constant for
// (s, i) != (s', i'). Exhaustive over da, random over the rest.
MacCheckResult mac_structure_check(const FieldSpecPtr& field, int L, int samples,
                                   std::uint64_t seed);

}  // namespace rfe
