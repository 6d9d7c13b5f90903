// Acceptance suite: one criterion per run (or all), one PASS/FAIL line each.
// Thresholds and tolerances are pinned here; every comparison that can be
// exact is exact.
#include "rfe/verify.hpp"

#include <cstring>
#include <iostream>
#include <string>
#include <vector>

namespace {

using rfe::CheckResult;

struct Criterion {
    int number;
    const char* title;
    std::vector<CheckResult> (*run)();
};

std::vector<CheckResult> c1() {
    return {rfe::checks::extractor_correctness(), rfe::checks::fuzzy_correctness_small()};
}
std::vector<CheckResult> c2() { return {rfe::checks::extraction_bound()}; }
std::vector<CheckResult> c3() { return {rfe::checks::optimal_forgery_bounds()}; }
std::vector<CheckResult> c4() { return {rfe::checks::bad_set_exact()}; }
std::vector<CheckResult> c5() {
    return {rfe::checks::attack_baseline_rate(100000, 1), rfe::checks::attack_exact_half()};
}
std::vector<CheckResult> c6() { return {rfe::checks::attack_transplant(100000, 1)}; }
std::vector<CheckResult> c7() { return {rfe::checks::parameter_table()}; }
std::vector<CheckResult> c8() {
    return {rfe::checks::mac_attainment_all(false), rfe::checks::mac_structure(1)};
}
std::vector<CheckResult> c9() { return {rfe::checks::code_entropy_loss()}; }
std::vector<CheckResult> c10() {
    return {rfe::checks::sd_switch_bound(10000, 1), rfe::checks::entropy_drop_bound(10000, 1),
            rfe::checks::collision_probability()};
}

const Criterion kCriteria[] = {
    {1, "correctness round trip (errorless n=8 exhaustive; [7,4,3] fuzzy exhaustive)", c1},
    {2, "extraction bound: exact SD <= 2^((n/2-m)/2), n in {8,10,12}", c2},
    {3, "robustness bound: optimal forgery <= 2^(n-v-m), n in {8,10}", c3},
    {4, "bad-set counting: every transcript at n=8 hits exactly 2^(n/2-v)", c4},
    {5, "baseline attack: rate >= delta/2 - 3*sigma at 1e5 trials; guess-free case exactly 1/2", c5},
    {6, "attack does not transfer: rate <= delta against the paired construction", c6},
    {7, "key-length table: 192 vs 128 (ratio 3/2); shortened-pre gain 2log(1/eps)-log(1/delta)", c7},
    {8, "tag manipulation: value attainment <= L+2, exhaustive + structural", c8},
    {9, "sketch entropy loss: exact avg min-entropy >= m-k on [7,4,3]", c9},
    {10, "bound sweeps: SD switch, entropy drop, collision max = 2^-k", c10},
};

int run_criterion(const Criterion& c) {
    bool pass = true;
    double seconds = 0;
    std::string detail;
    for (const auto& r : c.run()) {
        pass = pass && r.pass;
        seconds += r.seconds;
        if (!detail.empty()) detail += " | ";
        detail += r.name + ": " + r.detail;
    }
    std::cout << "C" << c.number << " " << (pass ? "PASS" : "FAIL") << " [" << seconds << "s] "
              << c.title << "\n    " << detail << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& c : kCriteria) std::cout << c.number << ": " << c.title << "\n";
            return 0;
        }
    }
    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.number != only) continue;
        failures += run_criterion(c);
    }
    return failures == 0 ? 0 : 1;
}
