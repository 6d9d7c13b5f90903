#include "rfe/fuzzy.hpp"

#include <cmath>
#include <stdexcept>

namespace rfe {

BallVolume hamming_ball(int n, int t) {
    if (t < 0 || t > n) throw std::invalid_argument("hamming_ball: t out of range");
    Int volume = 0, binom = 1;
    for (int j = 0; j <= t; ++j) {
        volume += binom;
        binom = binom * (n - j) / (j + 1);
    }
    BallVolume out;
    out.volume = volume;
    out.log2_value = log2_int(volume);
    out.within_t_log_bound = volume <= boost::multiprecision::pow(Int(n + 1), static_cast<unsigned>(t));
    if (t == 0 || t == n) {
        out.within_entropy_bound = true;
    } else {
        double x = static_cast<double>(t) / n;
        double h2 = -x * std::log2(x) - (1 - x) * std::log2(1 - x);
        out.within_entropy_bound = out.log2_value <= n * h2 + 1e-9;
    }
    return out;
}

namespace {

void layout_common(FuzzyParams& p, const CodePtr& code, bool truncate_c) {
    p.code = code;
    p.n = code->n();
    p.k = code->k();
    p.t = code->t();
    p.truncate_c = truncate_c;
    int n_prime = p.n - p.k;
    if (n_prime % 2 != 0) {
        if (!truncate_c)
            throw std::invalid_argument(
                "fuzzy params: n-k is odd; drop one bit of the complement (truncate_c)");
        n_prime -= 1;
    } else if (truncate_c) {
        throw std::invalid_argument("fuzzy params: truncate_c given but n-k is already even");
    }
    if (n_prime < 2) throw std::invalid_argument("fuzzy params: complement too short");
    p.n_prime = n_prime;
    p.L = 2 * ((p.k + n_prime - 1) / n_prime);  // 2*ceil(k/n'), even by construction
    p.field = FieldSpec::make(n_prime / 2);
    p.ball_volume = hamming_ball(p.n, p.t).volume;
}

}  // namespace

std::variant<FuzzyParams, Infeasible> derive_fuzzy_params(const CodePtr& code, int m,
                                                          const Rational& log2_inv_delta,
                                                          const Rational& log2_inv_eps,
                                                          bool allow_truncate_c) {
    FuzzyParams p;
    try {
        layout_common(p, code, (code->n() - code->k()) % 2 != 0 && allow_truncate_c);
    } catch (const std::invalid_argument& e) {
        return Infeasible{e.what()};
    }
    if (m <= 0 || m > p.n) return Infeasible{"require 0 < m <= n"};
    if (log2_inv_delta < 0 || log2_inv_eps < 0)
        return Infeasible{"robustness and uniformity exponents must be nonnegative"};
    p.m = p.truncate_c ? m - 1 : m;  // dropping a bit of c costs at most one bit of entropy
    p.log2_inv_delta = log2_inv_delta;
    p.log2_inv_eps = log2_inv_eps;

    // v = ceil((n - m) + log2(B*(L+2)) + log2(1/delta)); single ceiling after
    // summing all the exact terms.
    Int mult = p.ball_volume * (p.L + 2);
    p.v = static_cast<int>(
        ceil_add_log2(Rational(p.n - p.m) + log2_inv_delta, mult));
    if (p.v < 0) p.v = 0;
    // beta = max(0, (n+k)/2 + 2log2(1/eps) - m); n+k = n' + 2k is even.
    long beta = ceil_rational(Rational(p.n_prime / 2 + p.k - p.m) + 2 * log2_inv_eps);
    p.beta = static_cast<int>(std::max(0L, beta));
    p.ell = p.n_prime / 2 - p.v - p.beta;
    if (p.ell < 1) return Infeasible{"robustness+uniformity constraints leave ell < 1"};

    // Realized key length stays within the proof-derived bound
    // ell <= m - n/2 - k/2 - log2(B(L+2)) - log2(1/delta).
    Rational rhs = Rational(2 * p.m - p.n - p.k, 2) - log2_inv_delta - Rational(p.ell);
    if (!le_plus_log2(Rational(0), mult, rhs))
        return Infeasible{"derived ell exceeds the robustness bound"};
    return p;
}

FuzzyParams fuzzy_layout(const CodePtr& code, int v, int ell, bool truncate_c) {
    FuzzyParams p;
    layout_common(p, code, truncate_c);
    if (v < 0 || ell < 1 || v + ell > p.n_prime / 2)
        throw std::invalid_argument("fuzzy_layout: v + ell exceeds n'/2");
    p.m = p.n;
    p.v = v;
    p.ell = ell;
    p.beta = p.n_prime / 2 - v - ell;
    return p;
}

std::vector<FieldElement> pad_and_split_sketch(const Bits& s, int n_prime,
                                               const FieldSpecPtr& field) {
    if (n_prime % 2 != 0) throw std::invalid_argument("pad_and_split_sketch: n' must be even");
    const int half = n_prime / 2;
    const int L = 2 * ((static_cast<int>(s.size()) + n_prime - 1) / n_prime);
    Bits padded(static_cast<std::size_t>(L) * static_cast<std::size_t>(half));
    for (std::size_t p = 1; p <= s.size(); ++p) padded.set(p, s.get(p));
    std::vector<FieldElement> parts;
    parts.reserve(static_cast<std::size_t>(L));
    for (int c = 0; c < L; ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * static_cast<std::size_t>(half);
        Bits chunk = padded.substr(lo + 1, lo + static_cast<std::size_t>(half));
        parts.emplace_back(chunk, field);
    }
    return parts;  // parts[0] = s_{L-1}
}

FieldElement mac_poly_eval(const std::vector<FieldElement>& s_parts, const FieldElement& i,
                           const FieldElement& a) {
    const auto& field = i.spec();
    const std::size_t L = s_parts.size();
    // Coefficients highest degree first: x^{L+3}, 0, s_{L-1}, ..., s_0, i, 0.
    std::vector<FieldElement> coeffs;
    coeffs.reserve(L + 4);
    coeffs.emplace_back(u128(1), field);
    coeffs.emplace_back(u128(0), field);
    for (const auto& part : s_parts) coeffs.push_back(part);
    coeffs.push_back(i);
    coeffs.emplace_back(u128(0), field);
    return eval_poly(coeffs, a);
}

std::pair<FieldElement, FieldElement> complement_halves(const Bits& w, const FuzzyParams& params) {
    Bits c = params.code->ss_perp(w);
    if (params.truncate_c) c = c.substr(1, c.size() - 1);
    const std::size_t half = static_cast<std::size_t>(params.n_prime) / 2;
    FieldElement a(c.substr(1, half), params.field);
    FieldElement b(c.substr(half + 1, 2 * half), params.field);
    return {a, b};
}

FuzzyGenResult fuzzy_gen(const Bits& w, const FuzzyParams& params, const FieldElement& seed) {
    if (w.size() != static_cast<std::size_t>(params.n))
        throw std::invalid_argument("fuzzy_gen: secret length does not match the code");
    if (!seed.spec()->same_structure(*params.field))
        throw std::invalid_argument("fuzzy_gen: seed drawn from the wrong field");
    Bits s = params.code->ss(w);
    auto [a, b] = complement_halves(w, params);
    auto parts = pad_and_split_sketch(s, params.n_prime, params.field);
    Bits y = (mac_poly_eval(parts, seed, a) + b).bits();
    const auto v = static_cast<std::size_t>(params.v);
    Bits sigma = y.substr(1, v);
    Bits key = y.substr(v + 1, v + static_cast<std::size_t>(params.ell));
    return FuzzyGenResult{key, FuzzyHelper{s, seed, sigma}};
}

FuzzyGenResult fuzzy_gen(const Bits& w, const FuzzyParams& params, std::mt19937_64& rng) {
    return fuzzy_gen(w, params, fuzzy_random_seed(params, rng));
}

std::optional<Bits> fuzzy_rep(const Bits& w_prime, const FuzzyHelper& helper,
                              const FuzzyParams& params) {
    if (w_prime.size() != static_cast<std::size_t>(params.n))
        throw std::invalid_argument("fuzzy_rep: secret length does not match the code");
    if (helper.s.size() != static_cast<std::size_t>(params.k) ||
        helper.sigma.size() != static_cast<std::size_t>(params.v))
        throw std::invalid_argument("fuzzy_rep: helper fields have wrong lengths");
    if (!helper.i.spec()->same_structure(*params.field))
        throw std::invalid_argument("fuzzy_rep: helper seed from the wrong field");

    auto w_star = params.code->srec(w_prime, helper.s);
    if (!w_star) return std::nullopt;
    if ((*w_star ^ w_prime).weight() > static_cast<std::size_t>(params.t)) return std::nullopt;
    if (params.code->ss(*w_star) != helper.s) return std::nullopt;

    auto [a, b] = complement_halves(*w_star, params);
    auto parts = pad_and_split_sketch(helper.s, params.n_prime, params.field);
    Bits y = (mac_poly_eval(parts, helper.i, a) + b).bits();
    const auto v = static_cast<std::size_t>(params.v);
    if (y.substr(1, v) != helper.sigma) return std::nullopt;
    return y.substr(v + 1, v + static_cast<std::size_t>(params.ell));
}

std::optional<KeyOffsets> offsets_from_delta(const Bits& delta, const Bits& s,
                                             const Bits& s_prime, const FuzzyParams& params) {
    if (delta.size() != static_cast<std::size_t>(params.n) ||
        s.size() != static_cast<std::size_t>(params.k) ||
        s_prime.size() != static_cast<std::size_t>(params.k))
        throw std::invalid_argument("offsets_from_delta: length mismatch");
    // SRec(w + delta, s') flips the weight-<=t pattern whose syndrome is
    // S*delta ^ s ^ s'; by linearity the offset w* - w is delta ^ e.
    Bits target = params.code->ss(delta) ^ s ^ s_prime;
    auto e = params.code->decode_pattern(target);
    if (!e) return std::nullopt;  // Rep rejects before reaching the tag check
    Bits c_offset = params.code->ss_perp(delta ^ *e);
    if (params.truncate_c) c_offset = c_offset.substr(1, c_offset.size() - 1);
    const std::size_t half = static_cast<std::size_t>(params.n_prime) / 2;
    return KeyOffsets{FieldElement(c_offset.substr(1, half), params.field),
                      c_offset.substr(half + 1, 2 * half)};
}

FieldElement fuzzy_random_seed(const FuzzyParams& params, std::mt19937_64& rng) {
    const int k = params.field->degree();
    u128 raw = rng();
    if (k > 64) raw |= u128(rng()) << 64;
    return FieldElement(raw & params.field->mask(), params.field);
}

}  // namespace rfe
