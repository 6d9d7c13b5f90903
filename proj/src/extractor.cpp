#include "rfe/extractor.hpp"

#include <stdexcept>

namespace rfe {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::new_v: return "new";
        case Variant::new_short: return "new-short";
        case Variant::dkrs_pre: return "dkrs-pre";
        case Variant::dkrs_post: return "dkrs-post";
        case Variant::dkrs_improved_pre: return "dkrs-improved-pre";
        case Variant::dkrs_improved_post: return "dkrs-improved-post";
    }
    return "?";
}

std::optional<Variant> variant_from_name(const std::string& name) {
    for (Variant v : {Variant::new_v, Variant::new_short, Variant::dkrs_pre, Variant::dkrs_post,
                      Variant::dkrs_improved_pre, Variant::dkrs_improved_post})
        if (variant_name(v) == name) return v;
    return std::nullopt;
}

bool is_dkrs(Variant v) {
    return v == Variant::dkrs_pre || v == Variant::dkrs_post ||
           v == Variant::dkrs_improved_pre || v == Variant::dkrs_improved_post;
}

int ExtractorParams::field_degree() const {
    return is_dkrs(variant) ? n - v : n / 2;
}

Rational ExtractorParams::achieved_uniformity_exponent() const {
    // Hash output kept: n/2 - beta bits (new family) or n - v - beta (baseline).
    int kept = is_dkrs(variant) ? n - v - beta : n / 2 - beta;
    return Rational(kept - m, 2);
}

Rational ExtractorParams::achieved_robustness_exponent() const {
    // Post-application charges the key length against the tag: the baseline
    // needs v >= ell + (n-m) + log2(1/delta), its pre-application reading
    // only v >= (n-m) + log2(1/delta). The paired construction's bound is
    // post-application already.
    if (variant == Variant::dkrs_post || variant == Variant::dkrs_improved_post)
        return Rational(-(v - ell - (n - m)));
    if (is_dkrs(variant)) return Rational(-(v - (n - m)));
    return Rational(n - v - m);
}

namespace {

long ceil_to_long(const Rational& r) { return ceil_rational(r); }

}  // namespace

ParamResult derive_params(int n, int m, const Rational& log2_inv_delta,
                          const Rational& log2_inv_eps, Variant variant, Basis basis) {
    if (n <= 0 || m <= 0 || m > n) return Infeasible{"require 0 < m <= n"};
    if (!is_dkrs(variant) && n % 2 != 0)
        return Infeasible{"n must be even (drop one bit of w and lower m by 1)"};
    if (log2_inv_delta < 0 || log2_inv_eps < 0)
        return Infeasible{"robustness and uniformity exponents must be nonnegative"};

    ExtractorParams p;
    p.n = n;
    p.m = m;
    p.log2_inv_delta = log2_inv_delta;
    p.log2_inv_eps = log2_inv_eps;
    p.variant = variant;

    const Rational robustness_v = Rational(n - m) + log2_inv_delta;
    const Rational uniformity_v = Rational(n - m) + 2 * log2_inv_eps;

    switch (variant) {
        case Variant::new_v: {
            p.v = std::max(0L, ceil_to_long(robustness_v));
            p.ell = n / 2 - p.v;
            p.beta = 0;
            if (2 * log2_inv_eps > Rational(m) - Rational(n, 2))
                return Infeasible{"uniformity constraint m >= n/2 + 2log(1/eps) (use new-short)"};
            if (p.ell < 1) return Infeasible{"robustness constraint leaves ell < 1"};
            break;
        }
        case Variant::new_short: {
            p.v = std::max(0L, ceil_to_long(robustness_v));
            long bound = floor_rational(Rational(2 * m - n) - log2_inv_delta - 2 * log2_inv_eps);
            p.ell = static_cast<int>(std::min<long>(bound, n / 2 - p.v));
            if (p.ell < 1)
                return Infeasible{"uniformity+robustness constraints leave ell < 1"};
            p.beta = n / 2 - p.v - p.ell;
            break;
        }
        case Variant::dkrs_pre:
        case Variant::dkrs_post: {
            Rational rv = variant == Variant::dkrs_pre
                              ? robustness_v
                              : Rational(2 * n - m, 3) + log2_inv_delta / 3;
            p.v = std::max(0L, ceil_to_long(std::max(rv, uniformity_v)));
            p.ell = n - 2 * p.v;
            p.beta = 0;
            if (p.ell < 1) return Infeasible{"uniformity/robustness constraint leaves ell < 1"};
            break;
        }
        case Variant::dkrs_improved_pre: {
            p.v = std::max(0L, ceil_to_long(robustness_v));
            p.beta = static_cast<int>(
                std::max(0L, ceil_to_long(2 * log2_inv_eps - log2_inv_delta)));
            p.ell = n - 2 * p.v - p.beta;
            if (p.ell < 1) return Infeasible{"uniformity/robustness constraint leaves ell < 1"};
            break;
        }
        case Variant::dkrs_improved_post: {
            p.v = std::max(0L, ceil_to_long(Rational(2 * n - m, 3) + log2_inv_delta / 3));
            p.beta = static_cast<int>(std::max(
                0L, ceil_to_long(2 * log2_inv_eps -
                                 (Rational(2 * m - n) - log2_inv_delta) / 3)));
            p.ell = n - 2 * p.v - p.beta;
            if (p.ell < 1) return Infeasible{"uniformity/robustness constraint leaves ell < 1"};
            break;
        }
    }
    if (p.v < 0 || p.beta < 0) return Infeasible{"negative layout value"};
    const int degree = p.field_degree();
    if (degree >= 1 && degree <= 128) {
        try {
            p.field = FieldSpec::make(degree, basis);
        } catch (const std::invalid_argument& e) {
            return Infeasible{e.what()};  // parity-split over an odd degree
        }
    } else if (basis != Basis::standard) {
        return Infeasible{"field degree beyond 128 for a non-standard basis"};
    }
    return p;
}

ExtractorParams explicit_layout(int n, int v, int ell, int beta, Variant variant, Basis basis) {
    ExtractorParams p;
    p.n = n;
    p.m = n;
    p.variant = variant;
    p.v = v;
    p.ell = ell;
    p.beta = beta;
    int half = is_dkrs(variant) ? n - v : n / 2;
    if (v < 0 || ell < 1 || beta < 0 || v + ell + beta != half)
        throw std::invalid_argument("explicit_layout: v + ell + beta must fill the hash output");
    p.field = FieldSpec::make(p.field_degree(), basis);
    return p;
}

namespace {

void check_w(const Bits& w, const ExtractorParams& params) {
    if (!params.field)
        throw std::invalid_argument("key operations need a field degree within 1..128");
    if (w.size() != static_cast<std::size_t>(params.n))
        throw std::invalid_argument("secret length does not match n");
}

void check_seed(const FieldElement& seed, const ExtractorParams& params) {
    if (!seed.spec()->same_structure(*params.field))
        throw std::invalid_argument("seed drawn from the wrong field");
}

}  // namespace

GenResult gen(const Bits& w, const ExtractorParams& params, const FieldElement& seed) {
    if (is_dkrs(params.variant)) throw std::invalid_argument("gen: params are for the baseline family");
    check_w(w, params);
    check_seed(seed, params);
    const std::size_t half = static_cast<std::size_t>(params.n) / 2;
    FieldElement a(w.substr(1, half), params.field);
    FieldElement b(w.substr(half + 1, 2 * half), params.field);
    Bits y = (seed * a + b).bits();
    const std::size_t v = static_cast<std::size_t>(params.v);
    Bits sigma = y.substr(1, v);
    Bits key = y.substr(v + 1, v + static_cast<std::size_t>(params.ell));
    return GenResult{key, HelperString{seed, sigma}};
}

std::optional<Bits> rep(const Bits& w, const HelperString& helper, const ExtractorParams& params) {
    if (is_dkrs(params.variant)) throw std::invalid_argument("rep: params are for the baseline family");
    check_w(w, params);
    check_seed(helper.i, params);
    if (helper.sigma.size() != static_cast<std::size_t>(params.v))
        throw std::invalid_argument("helper tag has wrong length");
    const std::size_t half = static_cast<std::size_t>(params.n) / 2;
    FieldElement a(w.substr(1, half), params.field);
    FieldElement b(w.substr(half + 1, 2 * half), params.field);
    Bits y = (helper.i * a + b).bits();
    const std::size_t v = static_cast<std::size_t>(params.v);
    if (y.substr(1, v) != helper.sigma) return std::nullopt;
    return y.substr(v + 1, v + static_cast<std::size_t>(params.ell));
}

GenResult dkrs_gen(const Bits& w, const ExtractorParams& params, const FieldElement& seed) {
    if (!is_dkrs(params.variant))
        throw std::invalid_argument("dkrs_gen: params are for the paired-hash family");
    check_w(w, params);
    check_seed(seed, params);
    const std::size_t head = static_cast<std::size_t>(params.n - params.v);
    const std::size_t v = static_cast<std::size_t>(params.v);
    FieldElement a(w.substr(1, head), params.field);
    Bits b = w.substr(head + 1, head + v);
    Bits z = (seed * a).bits();
    Bits sigma = z.substr(1, v) ^ b;
    Bits key = z.substr(v + 1, v + static_cast<std::size_t>(params.ell));
    return GenResult{key, HelperString{seed, sigma}};
}

std::optional<Bits> dkrs_rep(const Bits& w, const HelperString& helper,
                             const ExtractorParams& params) {
    if (!is_dkrs(params.variant))
        throw std::invalid_argument("dkrs_rep: params are for the paired-hash family");
    check_w(w, params);
    check_seed(helper.i, params);
    if (helper.sigma.size() != static_cast<std::size_t>(params.v))
        throw std::invalid_argument("helper tag has wrong length");
    const std::size_t head = static_cast<std::size_t>(params.n - params.v);
    const std::size_t v = static_cast<std::size_t>(params.v);
    FieldElement a(w.substr(1, head), params.field);
    Bits b = w.substr(head + 1, head + v);
    Bits z = (helper.i * a).bits();
    if ((z.substr(1, v) ^ b) != helper.sigma) return std::nullopt;
    return z.substr(v + 1, v + static_cast<std::size_t>(params.ell));
}

GenResult generate(const Bits& w, const ExtractorParams& params, const FieldElement& seed) {
    return is_dkrs(params.variant) ? dkrs_gen(w, params, seed) : gen(w, params, seed);
}

std::optional<Bits> reproduce(const Bits& w, const HelperString& helper,
                              const ExtractorParams& params) {
    return is_dkrs(params.variant) ? dkrs_rep(w, helper, params) : rep(w, helper, params);
}

FieldElement random_seed(const ExtractorParams& params, std::mt19937_64& rng) {
    const int k = params.field->degree();
    u128 raw = rng();
    if (k > 64) raw |= u128(rng()) << 64;
    return FieldElement(raw & params.field->mask(), params.field);
}

GenResult gen(const Bits& w, const ExtractorParams& params, std::mt19937_64& rng) {
    return gen(w, params, random_seed(params, rng));
}

GenResult dkrs_gen(const Bits& w, const ExtractorParams& params, std::mt19937_64& rng) {
    return dkrs_gen(w, params, random_seed(params, rng));
}

FlatDistribution flat_for_variant(const ExtractorParams& params) {
    std::size_t b_start = is_dkrs(params.variant)
                              ? static_cast<std::size_t>(params.n - params.v) + 1
                              : static_cast<std::size_t>(params.n) / 2 + 1;
    return FlatDistribution::zeros_at(params.n, params.m, b_start);
}

}  // namespace rfe
