// Ground-truth computations at desk scale: exact statistical distance,
// exact average conditional min-entropy, bad-set counting for the
// robustness proofs, and collision probabilities of the paired hash.
// All arithmetic is exact (big integers / rationals); logarithms appear
// only in reporting values, never in pass/fail decisions. Every
// enumeration refuses instances beyond its stated size limit.
#pragma once

#include "rfe/distribution.hpp"
#include "rfe/exact.hpp"
#include "rfe/extractor.hpp"
#include "rfe/fuzzy.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace rfe {

struct Marginal {
    std::string space;
    std::map<std::uint64_t, Int> weight;
    Int total = 0;

    void add(std::uint64_t outcome, const Int& w = Int(1));
    static Marginal uniform(const std::string& space, std::uint64_t size);
};

struct JointDistribution {
    std::string space;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Int> weight;
    Int total = 0;

    void add(std::uint64_t x, std::uint64_t y, const Int& w = Int(1));
    Marginal marginal_x(const std::string& space_name) const;
    Marginal marginal_y(const std::string& space_name) const;
};

JointDistribution product(const Marginal& x, const Marginal& y);

Rational statistical_distance(const JointDistribution& d1, const JointDistribution& d2);
Rational statistical_distance(const Marginal& d1, const Marginal& d2);

// gamma = sum_y max_x Pr[x, y]; the average guessing probability. The
// entropy value -log2(gamma) is derived from it for reporting.
Rational avg_cond_guessing_prob(const JointDistribution& joint);
double avg_cond_min_entropy(const JointDistribution& joint);

struct SdSwitch {
    Rational alpha;  // SD((A,B), C x D)
    Rational lhs;    // SD((A,B), C x B)
    bool holds;      // lhs <= 2*alpha
};
SdSwitch check_sd_switch(const JointDistribution& ab, const Marginal& c, const Marginal& d);

// Exact SD((R, P), U_ell x P) for the given construction under a uniform
// seed and the flat secret distribution. n <= 12.
Rational extractor_output_distance(const ExtractorParams& params, const FlatDistribution& W);
// Fuzzy analog with P = (s, i, sigma); n <= 12.
Rational fuzzy_output_distance(const FuzzyParams& params, const FlatDistribution& W);

// Exact joint of (w, SS(w)) for sketch entropy-loss statements; n <= 16.
JointDistribution sketch_joint(const CodePtr& code, const FlatDistribution& W);

struct Transcript {
    FieldElement i;
    Bits sigma;
    Bits key;
    FieldElement i_prime;
    Bits sigma_prime;
};

// Exact number of secrets w consistent with the transcript's generation and
// verification equations; n <= 16.
Int bad_set_count(const ExtractorParams& params, const Transcript& tr);

// Sweeps every transcript (i, sigma, R, i' != i, sigma') at once and checks
// the count against 2^(n/2 - v) (paired-hash family); n <= 12.
struct BadSetSweep {
    Int expected;
    Int min_count;
    Int max_count;
    bool all_equal;
};
BadSetSweep bad_set_sweep(const ExtractorParams& params);

struct FuzzyTranscript {
    Bits s;
    FieldElement i;
    Bits sigma;
    Bits key;
    Bits s_prime;
    FieldElement i_prime;
    Bits sigma_prime;
    FieldElement delta_a;
    Bits delta_b;
};
Int fuzzy_bad_set_count(const FuzzyParams& params, const FuzzyTranscript& tr);

// max over distinct input pairs of Pr_i[i*a + b = i*a' + b']; exhaustive
// over pairs for degree <= 4, over input differences for degree <= 8.
Rational pairwise_collision_max(const FieldSpecPtr& field);

}  // namespace rfe
