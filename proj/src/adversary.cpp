#include "rfe/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rfe {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial_index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(trial_index)));
}

ForgePlan ForgePlan::build(const ExtractorParams& params, const FlatDistribution& W) {
    if (params.variant != Variant::dkrs_post && params.variant != Variant::new_v)
        throw std::invalid_argument("ForgePlan: supported against dkrs-post and new only");
    if (params.field->basis() != Basis::parity_split)
        throw std::invalid_argument("ForgePlan: requires the parity-split representation");
    if (params.beta != 0) throw std::invalid_argument("ForgePlan: beta must be 0");
    const int K = params.field_degree();
    const int v = params.v;
    const int n = params.n, m = params.m;
    if (W.n != n || W.m != m) throw std::invalid_argument("ForgePlan: distribution mismatch");
    const bool baseline = params.variant == Variant::dkrs_post;
    if (baseline) {
        if (n - m > v)
            throw std::invalid_argument("ForgePlan: zero region of b exceeds the tag");
        if (v - params.ell - (n - m) < 0)
            throw std::invalid_argument("ForgePlan: not in the attackable regime (v < ell + n - m)");
    } else {
        if (n - m > K)
            throw std::invalid_argument("ForgePlan: zero region of b exceeds n/2");
    }

    // Visibility of position j of z = i*a: through sigma where b is pinned to
    // zero, and (baseline only) through R, which exposes z directly.
    auto known = [&](int j) {
        if (baseline) return j <= std::min(n - m, v) || j > v;
        return j <= n - m;
    };

    // Column j of the division-by-x map in this representation.
    std::vector<u128> column(static_cast<std::size_t>(K) + 1);
    for (int j = 1; j <= K; ++j) {
        u128 ej = u128(1) << (K - j);
        column[static_cast<std::size_t>(j)] = params.field->div_by_x_raw(ej);
    }

    ForgePlan plan;
    plan.tau.resize(static_cast<std::size_t>(v));
    for (int p = 1; p <= v; ++p) {
        int source = 0;
        int sources = 0;
        for (int j = 1; j < K; ++j) {  // column K is the conditioned low bit of z
            if ((column[static_cast<std::size_t>(j)] >> (K - p)) & 1) {
                source = j;
                ++sources;
            }
        }
        if (sources > 1)
            throw std::logic_error("ForgePlan: division by x is not a shift off the conditioned bit");
        Entry e{};
        if (sources == 0) {
            e.kind = Kind::zero;
        } else if (known(source)) {
            e.kind = Kind::copy;
            e.source = source;
        } else {
            e.kind = Kind::guess;
            ++plan.guesses;
        }
        plan.tau[static_cast<std::size_t>(p - 1)] = e;
    }
    return plan;
}

HelperString attack_forge(const HelperString& helper, const Bits& key,
                          const ExtractorParams& params, const ForgePlan& plan,
                          std::mt19937_64& guess_rng) {
    const int v = params.v;
    auto z_bit = [&](int j) -> int {
        // Visible estimate of position j of i*a. The plan only emits copy
        // entries where the sigma/R reading is exact (zero region of b, or R
        // exposing i*a directly in the baseline).
        if (j <= v) return helper.sigma.get(static_cast<std::size_t>(j));
        return key.get(static_cast<std::size_t>(j - v));
    };
    Bits tau(static_cast<std::size_t>(v));
    std::uint64_t pool = 0;
    int avail = 0;
    for (int p = 1; p <= v; ++p) {
        const auto& e = plan.tau[static_cast<std::size_t>(p - 1)];
        int bit = 0;
        switch (e.kind) {
            case ForgePlan::Kind::zero: bit = 0; break;
            case ForgePlan::Kind::copy: bit = z_bit(e.source); break;
            case ForgePlan::Kind::guess:
                if (avail == 0) {
                    pool = guess_rng();
                    avail = 64;
                }
                bit = pool & 1;
                pool >>= 1;
                --avail;
                break;
        }
        tau.set(static_cast<std::size_t>(p), bit);
    }
    FieldElement i_prime = helper.i + div_by_x(helper.i);
    return HelperString{i_prime, helper.sigma ^ tau};
}

namespace {

void wilson_interval(ExperimentReport& r) {
    const double z = 2.5758293035489004;  // 99%
    const double nn = static_cast<double>(r.trials);
    const double p = r.rate;
    const double denom = 1 + z * z / nn;
    const double center = (p + z * z / (2 * nn)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
    r.ci_low = std::max(0.0, center - half);
    r.ci_high = std::min(1.0, center + half);
}

}  // namespace

ExperimentReport run_attack_experiment(const ExtractorParams& params, const FlatDistribution& W,
                                       std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("run_attack_experiment: trials must be >= 1");
    ForgePlan plan = ForgePlan::build(params, W);
    ExperimentReport report;
    report.trials = trials;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        auto rng = trial_rng(seed, trial);
        Bits w = W.sample(rng);
        FieldElement i = random_seed(params, rng);
        GenResult res = generate(w, params, i);
        HelperString forged = attack_forge(res.helper, res.key, params, plan, rng);
        if (forged == res.helper) continue;  // zero seed, no forgery possible
        if (reproduce(w, forged, params)) ++report.successes;
    }
    report.rate = static_cast<double>(report.successes) / static_cast<double>(trials);
    wilson_interval(report);
    return report;
}

Rational attack_exhaustive_rate(const ExtractorParams& params, const FlatDistribution& W) {
    ForgePlan plan = ForgePlan::build(params, W);
    if (plan.guesses != 0)
        throw std::invalid_argument("attack_exhaustive_rate: plan must be guess-free");
    const int K = params.field_degree();
    if (K > 10 || W.m > 14)
        throw std::invalid_argument("attack_exhaustive_rate: instance too large");
    const std::uint64_t seeds = std::uint64_t(1) << K;
    const std::uint64_t support = std::uint64_t(1) << W.m;
    std::mt19937_64 unused(0);
    Int successes = 0;
    for (std::uint64_t iv = 1; iv < seeds; ++iv) {
        FieldElement i(u128(iv), params.field);
        for (std::uint64_t wi = 0; wi < support; ++wi) {
            Bits w = W.member(wi);
            GenResult res = generate(w, params, i);
            HelperString forged = attack_forge(res.helper, res.key, params, plan, unused);
            if (forged == res.helper) continue;
            if (reproduce(w, forged, params)) ++successes;
        }
    }
    return Rational(successes, Int(seeds - 1) * Int(support));
}

Rational optimal_forgery_probability(const ExtractorParams& params, const FlatDistribution& W) {
    if (params.beta != 0)
        throw std::invalid_argument("optimal_forgery_probability: beta must be 0");
    const int K = params.field_degree();
    const int v = params.v;
    const int n = params.n;
    if (W.n != n) throw std::invalid_argument("optimal_forgery_probability: length mismatch");
    if (n > 12 || K > 8 || W.m + 2 * K > 26)
        throw std::invalid_argument("optimal_forgery_probability: instance too large");
    const auto* table = params.field->mul_table();
    if (!table) throw std::logic_error("optimal_forgery_probability: field table missing");
    const bool baseline = is_dkrs(params.variant);
    const std::uint64_t fsize = std::uint64_t(1) << K;
    const std::uint64_t support = std::uint64_t(1) << W.m;

    // Split each support member into the hash input a and the masking part b.
    std::vector<std::uint32_t> a_of(support), b_of(support);
    for (std::uint64_t wi = 0; wi < support; ++wi) {
        Bits w = W.member(wi);
        if (baseline) {
            a_of[wi] = static_cast<std::uint32_t>(
                w.substr(1, static_cast<std::size_t>(n - v)).to_uint());
            b_of[wi] = static_cast<std::uint32_t>(
                w.substr(static_cast<std::size_t>(n - v) + 1, static_cast<std::size_t>(n)).to_uint());
        } else {
            a_of[wi] = static_cast<std::uint32_t>(w.substr(1, static_cast<std::size_t>(n) / 2).to_uint());
            b_of[wi] = static_cast<std::uint32_t>(
                w.substr(static_cast<std::size_t>(n) / 2 + 1, static_cast<std::size_t>(n)).to_uint());
        }
    }

    // view(w, i): the K bits the adversary sees besides i.
    auto view_of = [&](std::uint64_t ia, std::uint64_t wi) -> std::uint64_t {
        if (baseline) {
            std::uint64_t sigma = (ia >> (K - v)) ^ b_of[wi];
            std::uint64_t r = ia & ((std::uint64_t(1) << (K - v)) - 1);
            return (sigma << (K - v)) | r;
        }
        return ia ^ b_of[wi];
    };
    auto tag_of = [&](std::uint64_t ipa, std::uint64_t wi) -> std::uint64_t {
        if (baseline) return (ipa >> (K - v)) ^ b_of[wi];  // b is the v-bit tail
        return (ipa ^ b_of[wi]) >> (K - v);
    };

    Int total_best = 0;
    std::vector<std::vector<std::uint32_t>> buckets(fsize);
    std::vector<std::uint32_t> counts(std::uint64_t(1) << v);
    for (std::uint64_t iv = 0; iv < fsize; ++iv) {
        for (auto& b : buckets) b.clear();
        for (std::uint64_t wi = 0; wi < support; ++wi) {
            std::uint64_t ia = table[(iv << K) | a_of[wi]];
            buckets[view_of(ia, wi)].push_back(static_cast<std::uint32_t>(wi));
        }
        for (const auto& bucket : buckets) {
            if (bucket.empty()) continue;
            std::uint32_t best = 0;
            for (std::uint64_t ip = 0; ip < fsize; ++ip) {
                if (ip == iv) continue;  // same seed forces sigma' = sigma, never accepted
                std::fill(counts.begin(), counts.end(), 0);
                for (std::uint32_t wi : bucket) {
                    std::uint64_t ipa = table[(ip << K) | a_of[wi]];
                    std::uint32_t c = ++counts[tag_of(ipa, wi)];
                    best = std::max(best, c);
                }
            }
            total_best += best;
        }
    }
    return Rational(total_best, Int(fsize) * Int(support));
}

}  // namespace rfe
