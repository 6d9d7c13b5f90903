#include "rfe/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace rfe {

void Marginal::add(std::uint64_t outcome, const Int& w) {
    weight[outcome] += w;
    total += w;
}

Marginal Marginal::uniform(const std::string& space, std::uint64_t size) {
    Marginal m;
    m.space = space;
    for (std::uint64_t o = 0; o < size; ++o) m.weight[o] = 1;
    m.total = size;
    return m;
}

void JointDistribution::add(std::uint64_t x, std::uint64_t y, const Int& w) {
    weight[{x, y}] += w;
    total += w;
}

Marginal JointDistribution::marginal_x(const std::string& space_name) const {
    Marginal m;
    m.space = space_name;
    for (const auto& [key, w] : weight) m.weight[key.first] += w;
    m.total = total;
    return m;
}

Marginal JointDistribution::marginal_y(const std::string& space_name) const {
    Marginal m;
    m.space = space_name;
    for (const auto& [key, w] : weight) m.weight[key.second] += w;
    m.total = total;
    return m;
}

JointDistribution product(const Marginal& x, const Marginal& y) {
    JointDistribution j;
    j.space = x.space + "*" + y.space;
    for (const auto& [xo, xw] : x.weight)
        for (const auto& [yo, yw] : y.weight) j.weight[{xo, yo}] = xw * yw;
    j.total = x.total * y.total;
    return j;
}

namespace {

template <typename Map>
Rational half_l1(const Map& w1, const Int& t1, const Map& w2, const Int& t2) {
    if (t1 <= 0 || t2 <= 0) throw std::invalid_argument("statistical_distance: empty distribution");
    // SD = (1/2) sum |w1/t1 - w2/t2| = sum |w1*t2 - w2*t1| / (2*t1*t2).
    Int acc = 0;
    auto it1 = w1.begin();
    auto it2 = w2.begin();
    while (it1 != w1.end() || it2 != w2.end()) {
        if (it2 == w2.end() || (it1 != w1.end() && it1->first < it2->first)) {
            acc += boost::multiprecision::abs(Int(it1->second * t2));
            ++it1;
        } else if (it1 == w1.end() || it2->first < it1->first) {
            acc += boost::multiprecision::abs(Int(it2->second * t1));
            ++it2;
        } else {
            acc += boost::multiprecision::abs(Int(it1->second * t2 - it2->second * t1));
            ++it1;
            ++it2;
        }
    }
    return Rational(acc, 2 * t1 * t2);
}

}  // namespace

Rational statistical_distance(const JointDistribution& d1, const JointDistribution& d2) {
    if (d1.space != d2.space)
        throw std::invalid_argument("statistical_distance: outcome spaces differ");
    return half_l1(d1.weight, d1.total, d2.weight, d2.total);
}

Rational statistical_distance(const Marginal& d1, const Marginal& d2) {
    if (d1.space != d2.space)
        throw std::invalid_argument("statistical_distance: outcome spaces differ");
    return half_l1(d1.weight, d1.total, d2.weight, d2.total);
}

Rational avg_cond_guessing_prob(const JointDistribution& joint) {
    if (joint.total <= 0) throw std::invalid_argument("avg_cond_guessing_prob: empty table");
    // Slices with Pr[y] = 0 simply never appear in the map.
    std::map<std::uint64_t, Int> best;
    for (const auto& [key, w] : joint.weight) {
        Int& b = best[key.second];
        if (w > b) b = w;
    }
    Int acc = 0;
    for (const auto& [y, w] : best) acc += w;
    return Rational(acc, joint.total);
}

double avg_cond_min_entropy(const JointDistribution& joint) {
    Rational g = avg_cond_guessing_prob(joint);
    return log2_int(boost::multiprecision::denominator(g)) -
           log2_int(boost::multiprecision::numerator(g));
}

SdSwitch check_sd_switch(const JointDistribution& ab, const Marginal& c, const Marginal& d) {
    SdSwitch out;
    out.alpha = statistical_distance(ab, product(c, d));
    Marginal b = ab.marginal_y(d.space);
    out.lhs = statistical_distance(ab, product(c, b));
    out.holds = out.lhs <= 2 * out.alpha;
    return out;
}

Rational extractor_output_distance(const ExtractorParams& params, const FlatDistribution& W) {
    if (params.n > 12)
        throw std::invalid_argument("extractor_output_distance: limited to n <= 12");
    if (W.n != params.n) throw std::invalid_argument("extractor_output_distance: length mismatch");
    const int K = params.field_degree();
    const std::uint64_t seeds = std::uint64_t(1) << K;
    const std::uint64_t support = std::uint64_t(1) << W.m;

    JointDistribution joint;
    joint.space = "key*(seed,tag)";
    for (std::uint64_t wi = 0; wi < support; ++wi) {
        Bits w = W.member(wi);
        for (std::uint64_t iv = 0; iv < seeds; ++iv) {
            FieldElement seed(u128(iv), params.field);
            auto res = generate(w, params, seed);
            std::uint64_t y = (iv << params.v) | res.helper.sigma.to_uint();
            joint.add(res.key.to_uint(), y);
        }
    }
    Marginal key_uniform = Marginal::uniform("key", std::uint64_t(1) << params.ell);
    Marginal p_marginal = joint.marginal_y("(seed,tag)");
    JointDistribution ideal = product(key_uniform, p_marginal);
    ideal.space = joint.space;
    return statistical_distance(joint, ideal);
}

Rational fuzzy_output_distance(const FuzzyParams& params, const FlatDistribution& W) {
    if (params.n > 12) throw std::invalid_argument("fuzzy_output_distance: limited to n <= 12");
    if (W.n != params.n) throw std::invalid_argument("fuzzy_output_distance: length mismatch");
    const int K = params.field->degree();
    const std::uint64_t seeds = std::uint64_t(1) << K;
    const std::uint64_t support = std::uint64_t(1) << W.m;

    JointDistribution joint;
    joint.space = "key*(sketch,seed,tag)";
    for (std::uint64_t wi = 0; wi < support; ++wi) {
        Bits w = W.member(wi);
        for (std::uint64_t iv = 0; iv < seeds; ++iv) {
            FieldElement seed(u128(iv), params.field);
            auto res = fuzzy_gen(w, params, seed);
            std::uint64_t y = (res.helper.s.to_uint() << (K + params.v)) |
                              (iv << params.v) | res.helper.sigma.to_uint();
            joint.add(res.key.to_uint(), y);
        }
    }
    Marginal key_uniform = Marginal::uniform("key", std::uint64_t(1) << params.ell);
    Marginal p_marginal = joint.marginal_y("(sketch,seed,tag)");
    JointDistribution ideal = product(key_uniform, p_marginal);
    ideal.space = joint.space;
    return statistical_distance(joint, ideal);
}

JointDistribution sketch_joint(const CodePtr& code, const FlatDistribution& W) {
    if (code->n() > 16) throw std::invalid_argument("sketch_joint: limited to n <= 16");
    if (W.n != code->n()) throw std::invalid_argument("sketch_joint: length mismatch");
    JointDistribution joint;
    joint.space = "secret*sketch";
    const std::uint64_t support = std::uint64_t(1) << W.m;
    for (std::uint64_t wi = 0; wi < support; ++wi) {
        Bits w = W.member(wi);
        joint.add(w.to_uint(), code->ss(w).to_uint());
    }
    return joint;
}

Int bad_set_count(const ExtractorParams& params, const Transcript& tr) {
    if (params.n > 16) throw std::invalid_argument("bad_set_count: limited to n <= 16");
    const std::size_t v = static_cast<std::size_t>(params.v);
    if (tr.sigma.size() != v || tr.sigma_prime.size() != v ||
        tr.key.size() != static_cast<std::size_t>(params.ell))
        throw std::invalid_argument("bad_set_count: transcript lengths do not match params");
    if (tr.i_prime == tr.i && tr.sigma_prime == tr.sigma)
        throw std::invalid_argument("bad_set_count: the forgery must differ from the helper");
    Int count = 0;
    const std::uint64_t total = std::uint64_t(1) << params.n;
    for (std::uint64_t wv = 0; wv < total; ++wv) {
        Bits w = Bits::from_uint(wv, static_cast<std::size_t>(params.n));
        auto res = generate(w, params, tr.i);
        if (res.helper.sigma != tr.sigma || res.key != tr.key) continue;
        auto res2 = generate(w, params, tr.i_prime);
        if (res2.helper.sigma == tr.sigma_prime) ++count;
    }
    return count;
}

BadSetSweep bad_set_sweep(const ExtractorParams& params) {
    if (is_dkrs(params.variant))
        throw std::invalid_argument("bad_set_sweep: paired-hash variants only");
    if (params.n > 12 || params.beta != 0)
        throw std::invalid_argument("bad_set_sweep: limited to n <= 12 with beta = 0");
    const int K = params.field_degree();
    const int v = params.v;
    const std::uint64_t fsize = std::uint64_t(1) << K;
    const auto* table = params.field->mul_table();
    if (!table) throw std::logic_error("bad_set_sweep: field table missing");

    BadSetSweep out;
    out.expected = Int(1) << (K - v);
    out.min_count = -1;
    out.max_count = 0;
    out.all_equal = true;
    // For each (i, i'): bucket every w by (y0 = ia+b, sigma' = [i'a+b]_1^v).
    std::vector<std::uint32_t> cell(fsize << v, 0);
    for (std::uint64_t i = 0; i < fsize; ++i) {
        for (std::uint64_t ip = 0; ip < fsize; ++ip) {
            if (ip == i) continue;
            std::fill(cell.begin(), cell.end(), 0);
            for (std::uint64_t a = 0; a < fsize; ++a) {
                const std::uint64_t ia = table[(i << K) | a];
                const std::uint64_t ipa = table[(ip << K) | a];
                for (std::uint64_t b = 0; b < fsize; ++b) {
                    std::uint64_t y0 = ia ^ b;
                    std::uint64_t sp = (ipa ^ b) >> (K - v);
                    ++cell[(y0 << v) | sp];
                }
            }
            for (std::uint32_t c : cell) {
                Int ci = c;
                if (out.min_count < 0 || ci < out.min_count) out.min_count = ci;
                if (ci > out.max_count) out.max_count = ci;
                if (ci != out.expected) out.all_equal = false;
            }
        }
    }
    return out;
}

Int fuzzy_bad_set_count(const FuzzyParams& params, const FuzzyTranscript& tr) {
    if (params.n > 16) throw std::invalid_argument("fuzzy_bad_set_count: limited to n <= 16");
    const std::size_t v = static_cast<std::size_t>(params.v);
    Int count = 0;
    const std::uint64_t total = std::uint64_t(1) << params.n;
    auto parts = pad_and_split_sketch(tr.s, params.n_prime, params.field);
    auto parts_prime = pad_and_split_sketch(tr.s_prime, params.n_prime, params.field);
    for (std::uint64_t wv = 0; wv < total; ++wv) {
        Bits w = Bits::from_uint(wv, static_cast<std::size_t>(params.n));
        if (params.code->ss(w) != tr.s) continue;
        auto [a, b] = complement_halves(w, params);
        Bits y = (mac_poly_eval(parts, tr.i, a) + b).bits();
        if (y.substr(1, v) != tr.sigma ||
            y.substr(v + 1, v + static_cast<std::size_t>(params.ell)) != tr.key)
            continue;
        FieldElement a2 = a + tr.delta_a;
        FieldElement b2 = b + FieldElement(tr.delta_b, params.field);
        Bits y2 = (mac_poly_eval(parts_prime, tr.i_prime, a2) + b2).bits();
        if (y2.substr(1, v) == tr.sigma_prime) ++count;
    }
    return count;
}

Rational pairwise_collision_max(const FieldSpecPtr& field) {
    const int k = field->degree();
    if (k > 8) throw std::invalid_argument("pairwise_collision_max: limited to degree <= 8");
    const std::uint64_t size = std::uint64_t(1) << k;
    const auto* table = field->mul_table();
    std::uint64_t best = 0;
    if (k <= 4) {
        // Honest quantifier: every distinct pair of inputs.
        for (std::uint64_t a = 0; a < size; ++a)
            for (std::uint64_t b = 0; b < size; ++b)
                for (std::uint64_t a2 = 0; a2 < size; ++a2)
                    for (std::uint64_t b2 = 0; b2 < size; ++b2) {
                        if (a == a2 && b == b2) continue;
                        std::uint64_t hits = 0;
                        for (std::uint64_t i = 0; i < size; ++i)
                            if ((table[(i << k) | a] ^ b) == (table[(i << k) | a2] ^ b2)) ++hits;
                        best = std::max(best, hits);
                    }
    } else {
        // Collisions depend only on the input difference: i*da = db.
        for (std::uint64_t da = 0; da < size; ++da)
            for (std::uint64_t db = 0; db < size; ++db) {
                if (da == 0 && db == 0) continue;
                std::uint64_t hits = 0;
                for (std::uint64_t i = 0; i < size; ++i)
                    if (table[(i << k) | da] == db) ++hits;
                best = std::max(best, hits);
            }
    }
    return Rational(best, size);
}

}  // namespace rfe
