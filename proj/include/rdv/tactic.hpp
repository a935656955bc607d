#pragma once

#include <string>
#include <vector>

#include "rdv/rng.hpp"

namespace rdv {

// A deterministic itinerary over n rounds: itinerary[i-1] is the location
// (1-based, in the owner's private numbering) visited at round i. Repeats
// allowed; length always equals n.
struct Tactic {
    int n = 0;
    std::vector<int> itinerary;

    bool operator==(const Tactic&) const = default;
};

enum class TacticKind { Passive, Active };

// Validates n >= 2, length == n, entries in [1..n].
Tactic make_tactic(int n, std::vector<int> itinerary);

// Number of distinct locations the tactic visits.
int image_size(const Tactic& t);

// Passive iff the image has size <= n/2 (real-valued n/2), active otherwise.
TacticKind classify(const Tactic& t);

// The random permutation matching A's location numbering to B's:
// mapping[i-1] = pi(i).
struct Binding {
    int n = 0;
    std::vector<int> mapping;
};

Binding make_binding(int n, std::vector<int> mapping);

// Uniformly random binding.
Binding random_binding(int n, RngStream& rng);

// First round i with pi(tA.itinerary[i]) == tB.itinerary[i], or n+1 when the
// players never meet within the n rounds.
int play(const Tactic& a, const Tactic& b, const Binding& binding);

// One (A-location, B-location) constraint cell: the binding "hits" it when
// pi(a) == b.
struct Cell {
    int a = 0;
    int b = 0;

    bool operator==(const Cell&) const = default;
    auto operator<=>(const Cell&) const = default;
};

inline bool cells_disjoint(const Cell& e, const Cell& f) {
    return e.a != f.a && e.b != f.b;
}

// Deduplicated cell set F = {(tA(i), tB(i)) : i in [n]}, kept sorted.
struct PairSet {
    int n = 0;
    std::vector<Cell> cells;

    long long m() const { return static_cast<long long>(cells.size()); }
};

PairSet pair_set(const Tactic& a, const Tactic& b);

// Text format: n whitespace-separated 1-based integers on one line.
Tactic parse_tactic(int n, const std::string& line);
std::string format_tactic(const Tactic& t);

// Uniformly random tactic (all n^n itineraries equally likely).
Tactic random_tactic(int n, RngStream& rng);

// All n^n tactics in lexicographic itinerary order. Throws if n^n would
// exceed `cap`.
std::vector<Tactic> all_tactics(int n, long long cap = 1 << 20);

}  // namespace rdv
