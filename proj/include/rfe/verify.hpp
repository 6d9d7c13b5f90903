// Named property checks behind both the CLI verify command and the
// acceptance suite. Each check pins its own instance sizes; options scale
// only trial counts and seeds for the randomized ones.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rfe {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    std::uint64_t trials = 100000;  // Monte Carlo attack trials
    std::uint64_t tables = 10000;   // random tables for the bound sweeps
    std::uint64_t seed = 1;
    int n_max = 12;      // ceiling for the enumeration sweeps
    bool quick = false;  // reduce randomized volumes for fast unit runs
};

namespace checks {

CheckResult field_axioms_small();
CheckResult field_axioms_random(std::uint64_t triples, std::uint64_t seed);
CheckResult field_half_swap();
CheckResult field_change_basis();
CheckResult field_modulus_independence(std::uint64_t seed);

CheckResult code_roundtrip();
CheckResult code_srec_hamming();
CheckResult code_srec_decode_failure();
CheckResult code_srec_bch(std::uint64_t trials, std::uint64_t seed);
CheckResult code_complement(std::uint64_t seed);
CheckResult code_dimensions();
CheckResult code_entropy_loss();

CheckResult extractor_correctness();
CheckResult extractor_pairwise_independence();
CheckResult fuzzy_correctness_small();
CheckResult fuzzy_roundtrip_bch(std::uint64_t trials, std::uint64_t seed);
CheckResult offsets_agreement();

CheckResult extraction_bound(int n_max = 12);
CheckResult fuzzy_extraction_bound();

CheckResult bad_set_exact();
CheckResult fuzzy_bad_set_bound();
CheckResult optimal_forgery_bounds(int n_max = 10);
CheckResult optimal_forgery_baseline_lower();

CheckResult attack_baseline_rate(std::uint64_t trials, std::uint64_t seed);
CheckResult attack_exact_half();
CheckResult attack_transplant(std::uint64_t trials, std::uint64_t seed);

CheckResult parameter_table();

CheckResult mac_attainment_all(bool quick);
CheckResult mac_structure(std::uint64_t seed);

CheckResult sd_switch_bound(std::uint64_t tables, std::uint64_t seed);
CheckResult entropy_drop_bound(std::uint64_t tables, std::uint64_t seed);
CheckResult collision_probability();

CheckResult helper_roundtrip(std::uint64_t seed);

}  // namespace checks

std::vector<std::string> verify_suites();
// Unknown suite name throws std::invalid_argument.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& options);

}  // namespace rfe
