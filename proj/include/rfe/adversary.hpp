// Executable attacks: the tag-offset forgery against the baseline
// construction in its parity-split representation, a Monte Carlo harness
// with reproducible per-trial seeding, and an exhaustive optimal forger
// for tiny parameters used to validate robustness bounds.
#pragma once

#include "rfe/distribution.hpp"
#include "rfe/exact.hpp"
#include "rfe/extractor.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace rfe {

// Position-by-position recipe for the attacker's estimate tau of
// [i*a/x]_1^v, derived mechanically from the action of division by x on the
// parity-split unit vectors rather than hard-coded: each target position is
// either constantly zero (conditioned on the low bit of i*a being zero),
// copied from a visible position of i*a, or guessed.
struct ForgePlan {
    enum class Kind { zero, copy, guess };
    struct Entry {
        Kind kind;
        int source;  // z-position for copy entries, 1-indexed
    };
    std::vector<Entry> tau;  // size v
    int guesses = 0;

    static ForgePlan build(const ExtractorParams& params, const FlatDistribution& W);
};

// i' = i + i/x, sigma' = sigma ^ tau. The zero seed admits no winning
// forgery: i' = i there, so Rep accepts only the unmodified tag.
HelperString attack_forge(const HelperString& helper, const Bits& key,
                          const ExtractorParams& params, const ForgePlan& plan,
                          std::mt19937_64& guess_rng);

struct ExperimentReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double rate = 0;
    double ci_low = 0;   // Wilson, 99%
    double ci_high = 0;
};
ExperimentReport run_attack_experiment(const ExtractorParams& params, const FlatDistribution& W,
                                       std::uint64_t trials, std::uint64_t seed);

// Exact success rate of the forgery over all seeds i != 0 and all support
// members, for plans with no guessed bits. The zero seed admits no forgery
// (P' = P) and is excluded from the accounting.
Rational attack_exhaustive_rate(const ExtractorParams& params, const FlatDistribution& W);

// Exact optimum over deterministic adversaries that see (i, sigma, R) and
// choose (i', sigma') != (i, sigma): average over seeds and support of the
// best acceptance count. Refuses instances beyond desk scale.
Rational optimal_forgery_probability(const ExtractorParams& params, const FlatDistribution& W);

std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial_index);

}  // namespace rfe
