#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rdv/rational.hpp"
#include "rdv/rng.hpp"
#include "rdv/tactic.hpp"

namespace rdv {

struct StrategyEntry {
    Tactic tactic;
    Rat weight;
};

// Fills `out` with a length-`length` itinerary drawn from the strategy.
// Samplers extend beyond the natural n-round tactic where the strategy has
// a sensible continuation (iid rounds, block renewal, cyclic sweep); a
// table-derived sampler supports length <= n only.
using Sampler = std::function<void(RngStream& rng, int length, std::vector<int>& out)>;

// A probability distribution over tactics: an exact finite-support table,
// a procedural sampler, or both (in which case they must agree).
struct Strategy {
    int n = 0;
    std::vector<StrategyEntry> support;
    Sampler sampler;

    bool has_table() const { return !support.empty(); }
    bool has_sampler() const { return static_cast<bool>(sampler); }
};

// Validates: n >= 2, all tactics share n, weights nonnegative and summing
// exactly to 1. Zero-weight entries are dropped.
Strategy make_table_strategy(int n, std::vector<StrategyEntry> support);

// Point mass on one tactic.
Strategy point_mass(const Tactic& t);

// Derives a sampler from the support table (lengths <= n; the drawn
// tactic's itinerary is truncated to the requested length).
void attach_table_sampler(Strategy& s);

// Text format: header line "n=<int>", then one line per entry:
//   <weight-numerator>/<weight-denominator> : <itinerary>
std::string format_strategy(const Strategy& s);
Strategy parse_strategy(const std::string& text);

Strategy load_strategy(const std::string& path);
void save_strategy(const Strategy& s, const std::string& path);

}  // namespace rdv
