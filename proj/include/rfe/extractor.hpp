// Errorless robust extractors: the paired-hash construction (sigma and R
// both drawn from i*a+b), its shortened close-to-uniform variant, and the
// baseline family (sigma = [i*a]+b) with pre/post parameterizations and
// their shortened improvements.
#pragma once

#include "rfe/bits.hpp"
#include "rfe/distribution.hpp"
#include "rfe/exact.hpp"
#include "rfe/gf2k.hpp"

#include <optional>
#include <random>
#include <string>
#include <variant>

namespace rfe {

enum class Variant {
    new_v,               // "new": a,b halves of w, y = i*a+b, sigma||R a prefix of y
    new_short,           // "new-short": R shortened by beta for tighter uniformity
    dkrs_pre,            // baseline, pre-application robustness v
    dkrs_post,           // baseline, post-application robustness v
    dkrs_improved_pre,   // baseline + shortening, pre-application
    dkrs_improved_post,  // baseline + shortening, post-application
};

std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);
bool is_dkrs(Variant v);

struct ExtractorParams {
    int n = 0;
    int m = 0;
    Rational log2_inv_delta;
    Rational log2_inv_eps;
    Variant variant = Variant::new_v;
    int v = 0;
    int ell = 0;
    int beta = 0;
    // GF(2^(n/2)) for new variants, GF(2^(n-v)) for dkrs. Left null by the
    // solver when the degree exceeds 128: the derived table is still valid,
    // key operations are not.
    FieldSpecPtr field;

    int field_degree() const;
    // log2 of the statistical-distance bound the realized layout achieves.
    Rational achieved_uniformity_exponent() const;
    // log2 of the forgery-probability bound (post-application analysis for
    // the new family; the baseline value is the pre-application one).
    Rational achieved_robustness_exponent() const;
};

struct Infeasible {
    std::string constraint;  // which requirement failed
};

using ParamResult = std::variant<ExtractorParams, Infeasible>;

ParamResult derive_params(int n, int m, const Rational& log2_inv_delta,
                          const Rational& log2_inv_eps, Variant variant,
                          Basis basis = Basis::standard);
// Harness entry: fixes the layout directly, bypassing the solver.
ExtractorParams explicit_layout(int n, int v, int ell, int beta, Variant variant,
                                Basis basis = Basis::standard);

struct HelperString {
    FieldElement i;
    Bits sigma;
    bool operator==(const HelperString&) const = default;
};

struct GenResult {
    Bits key;
    HelperString helper;
};

// Paired-hash construction (variants new / new-short).
GenResult gen(const Bits& w, const ExtractorParams& params, const FieldElement& seed);
GenResult gen(const Bits& w, const ExtractorParams& params, std::mt19937_64& rng);
std::optional<Bits> rep(const Bits& w, const HelperString& helper, const ExtractorParams& params);

// Baseline construction (dkrs variants).
GenResult dkrs_gen(const Bits& w, const ExtractorParams& params, const FieldElement& seed);
GenResult dkrs_gen(const Bits& w, const ExtractorParams& params, std::mt19937_64& rng);
std::optional<Bits> dkrs_rep(const Bits& w, const HelperString& helper,
                             const ExtractorParams& params);

// Dispatch on params.variant.
GenResult generate(const Bits& w, const ExtractorParams& params, const FieldElement& seed);
std::optional<Bits> reproduce(const Bits& w, const HelperString& helper,
                              const ExtractorParams& params);

FieldElement random_seed(const ExtractorParams& params, std::mt19937_64& rng);
// The flat distribution of the robustness analyses: top n-m bits of the
// variant's b-part pinned to zero.
FlatDistribution flat_for_variant(const ExtractorParams& params);

}  // namespace rfe
