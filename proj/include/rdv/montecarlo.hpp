#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdv/strategy.hpp"

namespace rdv {

struct MCEstimate {
    long long trials = 0;
    int horizon = 0;
    double mean = 0;
    double std_error = 0;
    double meet_fraction = 0;
    uint64_t seed = 0;
};

// Per trial: draw A's itinerary, then B's, then a uniform binding, and play
// to the horizon (horizon+1 when censored). Trial i always uses
// substream(seed, i), and waiting times are reduced as exact integer sums,
// so the result is identical for every worker count.
MCEstimate estimate_expected_waiting(const Strategy& a, const Strategy& b, int horizon,
                                     long long trials, uint64_t seed, int workers = 1);

struct AWScanRow {
    double theta = 0;
    MCEstimate estimate;
};

// One symmetric multi-block estimate per theta, every theta replayed with
// the same seed (common random numbers) so the ordering is stable.
std::vector<AWScanRow> aw_scan(int n, const std::vector<double>& thetas, int horizon,
                               long long trials, uint64_t seed, int workers = 1);

std::string aw_scan_csv(const std::vector<AWScanRow>& rows);

}  // namespace rdv
