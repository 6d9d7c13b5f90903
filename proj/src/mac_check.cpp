#include "rfe/mac_check.hpp"

#include <random>
#include <stdexcept>

namespace rfe {

namespace {

struct TableField {
    const std::uint8_t* mul;
    int k;
    std::uint64_t size;

    explicit TableField(const FieldSpecPtr& field) {
        mul = field->mul_table();
        if (!mul) throw std::invalid_argument("mac check: field degree must be <= 8");
        k = field->degree();
        size = std::uint64_t(1) << k;
    }
    std::uint64_t m(std::uint64_t a, std::uint64_t b) const { return mul[(a << k) | b]; }
};

// f_{s,i}(x) with chunks s_desc = (s_{L-1}, ..., s_0).
std::uint64_t eval_tag_poly(const TableField& F, const std::vector<std::uint64_t>& s_desc,
                            std::uint64_t i, std::uint64_t x) {
    std::uint64_t acc = 1;       // x^{L+3} leading coefficient
    acc = F.m(acc, x);           // degree L+2 coefficient is 0
    for (std::uint64_t s : s_desc) acc = F.m(acc, x) ^ s;
    acc = F.m(acc, x) ^ i;
    acc = F.m(acc, x);
    return acc;
}

int max_multiplicity(std::vector<std::uint32_t>& counts) {
    std::uint32_t best = 0;
    for (std::uint32_t c : counts) best = std::max(best, c);
    return static_cast<int>(best);
}

// Odd binomial coefficient test (Lucas over GF(2)).
bool binom_odd(int n, int j) { return (n & j) == j; }

}  // namespace

std::vector<std::vector<std::uint64_t>> full_chunk_space(const FieldSpecPtr& field, int L) {
    std::vector<std::uint64_t> all(std::size_t(1) << field->degree());
    for (std::uint64_t v = 0; v < all.size(); ++v) all[v] = v;
    return std::vector<std::vector<std::uint64_t>>(static_cast<std::size_t>(L), all);
}

std::vector<std::vector<std::uint64_t>> padded_sketch_space(const FieldSpecPtr& field, int L,
                                                            int k) {
    const int half = field->degree();
    if (L * half < k) throw std::invalid_argument("padded_sketch_space: sketch longer than L*n'/2");
    std::vector<std::vector<std::uint64_t>> space;
    int consumed = 0;
    for (int c = 0; c < L; ++c) {
        int bits = std::max(0, std::min(half, k - consumed));
        consumed += bits;
        // Chunk c holds sketch bits left-aligned; the tail is zero padding.
        std::vector<std::uint64_t> vals;
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << bits); ++v)
            vals.push_back(v << (half - bits));
        space.push_back(std::move(vals));
    }
    return space;
}

MacCheckResult mac_attainment_tuples(const FieldSpecPtr& field, int L,
                                     const std::vector<std::vector<std::uint64_t>>& chunk_space) {
    if (L % 2 != 0 || L < 2) throw std::invalid_argument("mac check: L must be even and >= 2");
    if (static_cast<int>(chunk_space.size()) != L)
        throw std::invalid_argument("mac check: chunk space size != L");
    TableField F(field);
    Int combos = F.size * F.size;  // i, i'
    for (const auto& c : chunk_space) combos *= Int(c.size()) * Int(c.size());
    combos *= F.size;  // da
    if (combos > Int(1) << 26)
        throw std::invalid_argument("mac check: tuple space too large, use the coefficient space");

    MacCheckResult out;
    out.bound = L + 2;
    std::vector<std::uint32_t> counts(F.size);
    std::vector<std::uint64_t> s(static_cast<std::size_t>(L)), sp(static_cast<std::size_t>(L));
    // Odometer over (s, s').
    std::vector<std::size_t> idx(static_cast<std::size_t>(2 * L), 0);
    auto chunk_at = [&](int pos) -> const std::vector<std::uint64_t>& {
        return chunk_space[static_cast<std::size_t>(pos % L)];
    };
    while (true) {
        for (int c = 0; c < L; ++c) {
            s[static_cast<std::size_t>(c)] = chunk_space[static_cast<std::size_t>(c)][idx[static_cast<std::size_t>(c)]];
            sp[static_cast<std::size_t>(c)] =
                chunk_space[static_cast<std::size_t>(c)]
                           [idx[static_cast<std::size_t>(L) + static_cast<std::size_t>(c)]];
        }
        for (std::uint64_t i = 0; i < F.size; ++i)
            for (std::uint64_t ip = 0; ip < F.size; ++ip) {
                if (s == sp && i == ip) continue;
                for (std::uint64_t da = 0; da < F.size; ++da) {
                    std::fill(counts.begin(), counts.end(), 0);
                    for (std::uint64_t x = 0; x < F.size; ++x) {
                        std::uint64_t val =
                            eval_tag_poly(F, s, i, x) ^ eval_tag_poly(F, sp, ip, x ^ da);
                        ++counts[val];
                    }
                    int mult = max_multiplicity(counts);
                    out.max_attainment = std::max(out.max_attainment, mult);
                    ++out.cases_checked;
                    if (mult > out.bound) {
                        out.ok = false;
                        out.detail = "attainment above L+2";
                        return out;
                    }
                }
            }
        // Advance the odometer.
        std::size_t pos = 0;
        while (pos < idx.size()) {
            if (++idx[pos] < chunk_at(static_cast<int>(pos)).size()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == idx.size()) break;
    }
    out.ok = true;
    return out;
}

MacCheckResult mac_attainment_coeffspace(const FieldSpecPtr& field, int L) {
    if (L % 2 != 0 || L < 2) throw std::invalid_argument("mac check: L must be even and >= 2");
    TableField F(field);
    const int max_deg = L + 2;
    // Largest enumeration: |F|^(L+1) monic polynomials of degree L+2.
    if (Rational(boost::multiprecision::pow(Int(F.size), static_cast<unsigned>(max_deg - 1))) >
        Rational(Int(1) << 26))
        throw std::invalid_argument("mac check: coefficient space too large");

    MacCheckResult out;
    out.bound = L + 2;
    std::vector<std::uint32_t> counts(F.size);
    for (int deg = 1; deg <= max_deg; ++deg) {
        // Monic, zero constant term: free coefficients for degrees 1..deg-1.
        std::vector<std::uint64_t> coef(static_cast<std::size_t>(deg) + 1, 0);
        coef[static_cast<std::size_t>(deg)] = 1;
        const int free = deg - 1;
        std::vector<std::uint64_t> c(static_cast<std::size_t>(free), 0);
        while (true) {
            for (int j = 0; j < free; ++j) coef[static_cast<std::size_t>(j) + 1] = c[static_cast<std::size_t>(j)];
            std::fill(counts.begin(), counts.end(), 0);
            for (std::uint64_t x = 0; x < F.size; ++x) {
                std::uint64_t acc = 0;
                for (int j = deg; j >= 0; --j) acc = F.m(acc, x) ^ coef[static_cast<std::size_t>(j)];
                ++counts[acc];
            }
            int mult = max_multiplicity(counts);
            out.max_attainment = std::max(out.max_attainment, mult);
            ++out.cases_checked;
            if (mult > deg) {  // a degree-d polynomial may attain a value at most d times
                out.ok = false;
                out.detail = "attainment above the degree";
                return out;
            }
            int pos = 0;
            while (pos < free) {
                if (++c[static_cast<std::size_t>(pos)] < F.size) break;
                c[static_cast<std::size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == free) break;
        }
    }
    out.ok = true;
    return out;
}

MacCheckResult mac_attainment_random(const FieldSpecPtr& field, int L, int samples,
                                     std::uint64_t seed) {
    if (L % 2 != 0 || L < 2) throw std::invalid_argument("mac check: L must be even and >= 2");
    TableField F(field);
    std::mt19937_64 rng(seed);
    auto draw = [&] { return rng() & (F.size - 1); };
    MacCheckResult out;
    out.bound = L + 2;
    std::vector<std::uint32_t> counts(F.size);
    std::vector<std::uint64_t> s(static_cast<std::size_t>(L)), sp(static_cast<std::size_t>(L));
    for (int trial = 0; trial < samples; ++trial) {
        for (auto& v : s) v = draw();
        for (auto& v : sp) v = draw();
        std::uint64_t i = draw(), ip = draw(), da = draw();
        if (s == sp && i == ip) continue;
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint64_t x = 0; x < F.size; ++x)
            ++counts[eval_tag_poly(F, s, i, x) ^ eval_tag_poly(F, sp, ip, x ^ da)];
        int mult = max_multiplicity(counts);
        out.max_attainment = std::max(out.max_attainment, mult);
        ++out.cases_checked;
        if (mult > out.bound) {
            out.ok = false;
            out.detail = "attainment above L+2";
            return out;
        }
    }
    out.ok = true;
    return out;
}

std::vector<std::uint64_t> mac_difference_coeffs(const FieldSpecPtr& field, int L,
                                                 const std::vector<std::uint64_t>& s_desc,
                                                 std::uint64_t i,
                                                 const std::vector<std::uint64_t>& s_prime_desc,
                                                 std::uint64_t i_prime, std::uint64_t da) {
    TableField F(field);
    std::vector<std::uint64_t> g(static_cast<std::size_t>(L) + 4, 0);  // degrees 0..L+3
    std::vector<std::uint64_t> da_pow(static_cast<std::size_t>(L) + 4, 1);
    for (std::size_t p = 1; p < da_pow.size(); ++p) da_pow[p] = F.m(da_pow[p - 1], da);
    // c * (x + da)^p added into g.
    auto add_shifted = [&](std::uint64_t c, int p) {
        if (c == 0) return;
        for (int j = 0; j <= p; ++j)
            if (binom_odd(p, j)) g[static_cast<std::size_t>(j)] ^= F.m(c, da_pow[static_cast<std::size_t>(p - j)]);
    };
    // f_{s,i}(x):
    g[static_cast<std::size_t>(L) + 3] ^= 1;
    for (int j = 0; j < L; ++j) g[static_cast<std::size_t>(j) + 2] ^= s_desc[static_cast<std::size_t>(L - 1 - j)];
    g[1] ^= i;
    // - f_{s',i'}(x + da):
    add_shifted(1, L + 3);
    for (int j = 0; j < L; ++j) add_shifted(s_prime_desc[static_cast<std::size_t>(L - 1 - j)], j + 2);
    add_shifted(i_prime, 1);
    if (g[static_cast<std::size_t>(L) + 3] != 0)
        throw std::logic_error("mac_difference_coeffs: leading terms failed to cancel");
    g.pop_back();
    return g;  // degrees 0..L+2
}

MacCheckResult mac_structure_check(const FieldSpecPtr& field, int L, int samples,
                                   std::uint64_t seed) {
    TableField F(field);
    std::mt19937_64 rng(seed);
    auto draw = [&] { return rng() & (F.size - 1); };
    MacCheckResult out;
    out.bound = L + 2;
    auto degree_of = [&](const std::vector<std::uint64_t>& g) {
        for (int j = static_cast<int>(g.size()) - 1; j >= 0; --j)
            if (g[static_cast<std::size_t>(j)]) return j;
        return -1;
    };
    for (int trial = 0; trial < samples; ++trial) {
        std::vector<std::uint64_t> s(static_cast<std::size_t>(L)), sp(static_cast<std::size_t>(L));
        for (auto& v : s) v = draw();
        for (auto& v : sp) v = draw();
        std::uint64_t i = draw(), ip = draw();
        // Exhaust da for each sampled tuple.
        for (std::uint64_t da = 0; da < F.size; ++da) {
            if (s == sp && i == ip) continue;
            auto g = mac_difference_coeffs(field, L, s, i, sp, ip, da);
            int deg = degree_of(g);
            ++out.cases_checked;
            if (deg < 1) {  // constant or zero difference
                out.ok = false;
                out.detail = "difference polynomial is constant";
                return out;
            }
            if (da != 0 && g[static_cast<std::size_t>(L) + 2] != da) {
                out.ok = false;
                out.detail = "leading coefficient differs from da";
                return out;
            }
            if (da == 0 && deg > L + 1) {
                out.ok = false;
                out.detail = "zero-offset difference has degree above L+1";
                return out;
            }
        }
    }
    out.max_attainment = 0;
    out.ok = true;
    return out;
}

}  // namespace rfe
