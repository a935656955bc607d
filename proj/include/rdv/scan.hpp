#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdv/exact.hpp"

namespace rdv {

struct PairScanConfig {
    int n = 4;
    bool exhaustive = true;     // every ordered tactic pair; needs n <= 4
    long long samples = 10000;  // sampled mode pair count
    uint64_t seed = 1;
    int workers = 1;
    bool compare_engines = true;  // enum vs inclusion-exclusion, when n allows
    bool check_lemmas = false;    // per-pair lemma verifiers
    Rat var_pb_alpha = Rat(1) / 32;
};

struct PairScanSummary {
    long long pairs = 0;
    long long engine_mismatches = 0;
    long long floor_violations = 0;   // w < (n+1)/2
    long long moment_violations = 0;  // EX != m/n, EX^4 > 15, or central4 > 16
    long long lemma_failures = 0;
    bool engines_compared = false;
    Rat min_floor_margin;                // min over pairs of w - (n+1)/2
    std::vector<std::string> failures;   // first few failure descriptions

    bool clean() const {
        return engine_mismatches == 0 && floor_violations == 0 && moment_violations == 0 &&
               lemma_failures == 0;
    }
};

// Sweeps tactic pairs (all ordered pairs, or seeded samples) and checks, per
// pair: engine agreement on w / survival curve / P(X=0) where enumeration is
// feasible, the (n+1)/2 floor, the moment caps, and optionally the per-pair
// lemma verifiers.
PairScanSummary run_pair_scan(const PairScanConfig& cfg,
                              const ExactLimits& limits = default_limits());

}  // namespace rdv
