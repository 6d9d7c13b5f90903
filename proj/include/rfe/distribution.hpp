// Flat test distributions for the secret w: a structured support where some
// fixed positions are pinned to zero and the rest are uniform, giving
// min-entropy exactly m = n - #pinned.
#pragma once

#include "rfe/bits.hpp"
#include "rfe/exact.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace rfe {

struct FlatDistribution {
    int n = 0;
    int m = 0;
    std::vector<std::size_t> zero_positions;  // 1-indexed, pinned to 0

    static FlatDistribution uniform(int n);
    // Zero positions start..start+(n-m)-1: "the top n-m bits of b".
    static FlatDistribution zeros_at(int n, int m, std::size_t start);

    bool contains(const Bits& w) const;
    Int support_size() const { return Int(1) << m; }
    // index < 2^m scatters into the free positions, MSB-first.
    Bits member(std::uint64_t index) const;
    Bits sample(std::mt19937_64& rng) const;
};

}  // namespace rfe
