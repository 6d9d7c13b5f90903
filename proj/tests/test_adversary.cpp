#include "rfe/adversary.hpp"

#include <doctest.h>

using namespace rfe;

namespace {

ExtractorParams baseline_params(int n, int m, int logd) {
    auto r = derive_params(n, m, Rational(logd), Rational(0), Variant::dkrs_post,
                           Basis::parity_split);
    REQUIRE(std::holds_alternative<ExtractorParams>(r));
    return std::get<ExtractorParams>(r);
}

}  // namespace

TEST_CASE("forge plan classifies tag positions mechanically") {
    // n=20, m=18, log(1/delta)=2: v=8, ell=4, and log(1/delta) >= n-m keeps
    // the known region inside the tag window, so guesses = v-ell-(n-m) = 2.
    ExtractorParams p = baseline_params(20, 18, 2);
    CHECK(p.v == 8);
    CHECK(p.ell == 4);
    FlatDistribution W = flat_for_variant(p);
    ForgePlan plan = ForgePlan::build(p, W);
    CHECK(plan.guesses == 2);
    int zeros = 0, copies = 0;
    for (const auto& e : plan.tau) {
        if (e.kind == ForgePlan::Kind::zero) ++zeros;
        if (e.kind == ForgePlan::Kind::copy) ++copies;
    }
    CHECK(zeros == 1);
    CHECK(copies == p.ell - 1 + (p.n - p.m));

    // Outside that regime part of the zero region is wasted and the
    // mechanical count exceeds v-ell-(n-m).
    ExtractorParams wide = baseline_params(32, 24, 2);
    CHECK(wide.v == 14);
    ForgePlan wide_plan = ForgePlan::build(wide, flat_for_variant(wide));
    CHECK(wide_plan.guesses == 5);

    // Guess-free instance at n=6 (v=2, ell=2, uniform W).
    ExtractorParams tiny = baseline_params(6, 6, 0);
    CHECK(tiny.v == 2);
    CHECK(tiny.ell == 2);
    ForgePlan tiny_plan = ForgePlan::build(tiny, FlatDistribution::uniform(6));
    CHECK(tiny_plan.guesses == 0);

    // The standard basis is not attackable by this plan.
    auto std_params = derive_params(20, 18, Rational(2), Rational(0), Variant::dkrs_post);
    REQUIRE(std::holds_alternative<ExtractorParams>(std_params));
    CHECK_THROWS_AS(ForgePlan::build(std::get<ExtractorParams>(std_params), W),
                    std::invalid_argument);
}

TEST_CASE("forged helper always differs for a nonzero seed") {
    ExtractorParams p = baseline_params(20, 18, 2);
    FlatDistribution W = flat_for_variant(p);
    ForgePlan plan = ForgePlan::build(p, W);
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        auto rng = trial_rng(99, trial);
        Bits w = W.sample(rng);
        FieldElement i = random_seed(p, rng);
        if (i.is_zero()) continue;
        auto res = dkrs_gen(w, p, i);
        auto forged = attack_forge(res.helper, res.key, p, plan, rng);
        CHECK(forged.i != res.helper.i);
    }
}

TEST_CASE("experiments are reproducible and validate their inputs") {
    ExtractorParams p = baseline_params(14, 12, 2);
    FlatDistribution W = flat_for_variant(p);
    auto a = run_attack_experiment(p, W, 2000, 7);
    auto b = run_attack_experiment(p, W, 2000, 7);
    CHECK(a.successes == b.successes);
    auto c = run_attack_experiment(p, W, 1, 7);
    CHECK((c.rate == 0.0 || c.rate == 1.0));
    CHECK_THROWS_AS(run_attack_experiment(p, W, 0, 7), std::invalid_argument);
    CHECK(a.ci_low <= a.rate);
    CHECK(a.rate <= a.ci_high);
}

TEST_CASE("guess-free attack succeeds on exactly half the nonzero-seed space") {
    ExtractorParams tiny = baseline_params(6, 6, 0);
    FlatDistribution W = FlatDistribution::uniform(6);
    CHECK(attack_exhaustive_rate(tiny, W) == Rational(1, 2));
}

TEST_CASE("optimal forgery probability is tight for the uniform secret") {
    // For uniform W the paired construction meets its bound with equality.
    for (int v : {1, 2, 3}) {
        ExtractorParams p = explicit_layout(8, v, 4 - v, 0, Variant::new_v);
        Rational opt = optimal_forgery_probability(p, FlatDistribution::uniform(8));
        CHECK(opt == pow2(-v));
    }
    ExtractorParams big = explicit_layout(14, 3, 4, 0, Variant::new_v);
    CHECK_THROWS_AS(optimal_forgery_probability(big, FlatDistribution::uniform(14)),
                    std::invalid_argument);
}

TEST_CASE("per-trial seeding is stable") {
    auto r1 = trial_rng(42, 7)();
    auto r2 = trial_rng(42, 7)();
    auto r3 = trial_rng(42, 8)();
    CHECK(r1 == r2);
    CHECK(r1 != r3);
    CHECK(splitmix64(0) != splitmix64(1));
}
