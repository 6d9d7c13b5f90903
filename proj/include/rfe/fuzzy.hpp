// Robust fuzzy extractor for the binary Hamming metric: a deterministic
// linear syndrome sketch, an algebraic-manipulation-resistant polynomial
// tag over GF(2^(n'/2)), and Gen/Rep tolerating up to t bit flips.
#pragma once

#include "rfe/exact.hpp"
#include "rfe/extractor.hpp"
#include "rfe/gf2k.hpp"
#include "rfe/linearcode.hpp"

#include <optional>
#include <random>
#include <utility>
#include <variant>

namespace rfe {

struct BallVolume {
    Int volume;         // sum of C(n, j) for j <= t
    double log2_value;  // for reporting; exact comparisons use `volume`
    bool within_t_log_bound;   // volume <= (n+1)^t, checked exactly
    bool within_entropy_bound; // log2 <= n*H2(t/n), double precision report
};
BallVolume hamming_ball(int n, int t);

struct FuzzyParams {
    int n = 0;        // secret length
    int k = 0;        // sketch length
    int n_prime = 0;  // n - k, after optional truncation of c
    bool truncate_c = false;
    int t = 0;
    int m = 0;
    int L = 0;  // 2*ceil(k/n'), forced even
    Int ball_volume;
    Rational log2_inv_delta;
    Rational log2_inv_eps;
    int v = 0;
    int ell = 0;
    int beta = 0;
    CodePtr code;
    FieldSpecPtr field;  // GF(2^(n_prime/2))
};

// Solver: v = ceil(n - m + log2(B*(L+2)) + log2(1/delta)) taken exactly in
// one step, beta = max(0, (n+k)/2 + 2log2(1/eps) - m), ell = n'/2 - v - beta.
std::variant<FuzzyParams, Infeasible> derive_fuzzy_params(const CodePtr& code, int m,
                                                          const Rational& log2_inv_delta,
                                                          const Rational& log2_inv_eps,
                                                          bool allow_truncate_c = false);
// Harness entry with a fixed (v, ell) layout.
FuzzyParams fuzzy_layout(const CodePtr& code, int v, int ell, bool truncate_c = false);

struct FuzzyHelper {
    Bits s;
    FieldElement i;
    Bits sigma;
    bool operator==(const FuzzyHelper&) const = default;
};

struct FuzzyGenResult {
    Bits key;
    FuzzyHelper helper;
};

// Chunks s_{L-1}, ..., s_0 (highest index first) of the zero-padded sketch.
std::vector<FieldElement> pad_and_split_sketch(const Bits& s, int n_prime,
                                               const FieldSpecPtr& field);
// f_{s,i}(a) = a^(L+3) + a^2*(s_{L-1} a^(L-1) + ... + s_0) + i*a.
FieldElement mac_poly_eval(const std::vector<FieldElement>& s_parts, const FieldElement& i,
                           const FieldElement& a);

FuzzyGenResult fuzzy_gen(const Bits& w, const FuzzyParams& params, const FieldElement& seed);
FuzzyGenResult fuzzy_gen(const Bits& w, const FuzzyParams& params, std::mt19937_64& rng);
std::optional<Bits> fuzzy_rep(const Bits& w_prime, const FuzzyHelper& helper,
                              const FuzzyParams& params);

// Harness-side of the sketch-modification analysis: the offsets
// (a'-a, b'-b) induced by receiving (w + delta, s') instead of (w, s),
// or the prediction that Rep rejects during recovery.
struct KeyOffsets {
    FieldElement delta_a;
    Bits delta_b;
};
std::optional<KeyOffsets> offsets_from_delta(const Bits& delta, const Bits& s,
                                             const Bits& s_prime, const FuzzyParams& params);

FieldElement fuzzy_random_seed(const FuzzyParams& params, std::mt19937_64& rng);
// a || b from w: the complement part of the sketch, split in halves.
std::pair<FieldElement, FieldElement> complement_halves(const Bits& w, const FuzzyParams& params);

}  // namespace rfe
