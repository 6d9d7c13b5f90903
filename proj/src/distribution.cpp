#include "rfe/distribution.hpp"

#include <algorithm>
#include <stdexcept>

namespace rfe {

FlatDistribution FlatDistribution::uniform(int n) {
    return FlatDistribution{n, n, {}};
}

FlatDistribution FlatDistribution::zeros_at(int n, int m, std::size_t start) {
    if (m < 0 || m > n) throw std::invalid_argument("FlatDistribution: bad entropy");
    FlatDistribution d{n, m, {}};
    for (int i = 0; i < n - m; ++i) d.zero_positions.push_back(start + static_cast<std::size_t>(i));
    if (!d.zero_positions.empty() && d.zero_positions.back() > static_cast<std::size_t>(n))
        throw std::invalid_argument("FlatDistribution: zero region exceeds length");
    return d;
}

bool FlatDistribution::contains(const Bits& w) const {
    if (w.size() != static_cast<std::size_t>(n)) return false;
    return std::all_of(zero_positions.begin(), zero_positions.end(),
                       [&](std::size_t p) { return w.get(p) == 0; });
}

Bits FlatDistribution::member(std::uint64_t index) const {
    if (m > 63 || index >= (std::uint64_t(1) << m))
        throw std::invalid_argument("FlatDistribution: member index out of range");
    Bits w(static_cast<std::size_t>(n));
    std::vector<bool> pinned(static_cast<std::size_t>(n) + 1, false);
    for (auto p : zero_positions) pinned[p] = true;
    int bit = m - 1;
    for (std::size_t p = 1; p <= static_cast<std::size_t>(n); ++p) {
        if (pinned[p]) continue;
        w.set(p, (index >> bit) & 1 ? 1 : 0);
        --bit;
    }
    return w;
}

Bits FlatDistribution::sample(std::mt19937_64& rng) const {
    Bits w(static_cast<std::size_t>(n));
    std::vector<bool> pinned(static_cast<std::size_t>(n) + 1, false);
    for (auto p : zero_positions) pinned[p] = true;
    std::uint64_t pool = 0;
    int avail = 0;
    for (std::size_t p = 1; p <= static_cast<std::size_t>(n); ++p) {
        if (pinned[p]) continue;
        if (avail == 0) {
            pool = rng();
            avail = 64;
        }
        w.set(p, pool & 1 ? 1 : 0);
        pool >>= 1;
        --avail;
    }
    return w;
}

}  // namespace rfe
