#include "rdv/tactic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rdv {

Tactic make_tactic(int n, std::vector<int> itinerary) {
    if (n < 2) throw std::invalid_argument("make_tactic: n must be at least 2");
    if (static_cast<int>(itinerary.size()) != n)
        throw std::invalid_argument("make_tactic: itinerary must have exactly n entries, got " +
                                    std::to_string(itinerary.size()) + " for n=" + std::to_string(n));
    for (int v : itinerary)
        if (v < 1 || v > n)
            throw std::invalid_argument("make_tactic: location " + std::to_string(v) +
                                        " out of range [1.." + std::to_string(n) + "]");
    return Tactic{n, std::move(itinerary)};
}

int image_size(const Tactic& t) {
    std::vector<bool> seen(t.n + 1, false);
    int count = 0;
    for (int v : t.itinerary)
        if (!seen[v]) {
            seen[v] = true;
            ++count;
        }
    return count;
}

TacticKind classify(const Tactic& t) {
    // image <= n/2 compared exactly: 2*image <= n
    return 2 * image_size(t) <= t.n ? TacticKind::Passive : TacticKind::Active;
}

Binding make_binding(int n, std::vector<int> mapping) {
    if (n < 2) throw std::invalid_argument("make_binding: n must be at least 2");
    if (static_cast<int>(mapping.size()) != n)
        throw std::invalid_argument("make_binding: mapping must have n entries");
    std::vector<bool> seen(n + 1, false);
    for (int v : mapping) {
        if (v < 1 || v > n || seen[v])
            throw std::invalid_argument("make_binding: mapping is not a permutation of [1..n]");
        seen[v] = true;
    }
    return Binding{n, std::move(mapping)};
}

Binding random_binding(int n, RngStream& rng) {
    std::vector<int> mapping(n);
    std::iota(mapping.begin(), mapping.end(), 1);
    rng.shuffle(mapping);
    return Binding{n, std::move(mapping)};
}

int play(const Tactic& a, const Tactic& b, const Binding& binding) {
    if (a.n != b.n || a.n != binding.n)
        throw std::invalid_argument("play: tactics and binding must share n");
    for (int i = 0; i < a.n; ++i)
        if (binding.mapping[a.itinerary[i] - 1] == b.itinerary[i]) return i + 1;
    return a.n + 1;
}

PairSet pair_set(const Tactic& a, const Tactic& b) {
    if (a.n != b.n) throw std::invalid_argument("pair_set: tactics must share n");
    std::vector<Cell> cells;
    cells.reserve(a.n);
    for (int i = 0; i < a.n; ++i) cells.push_back(Cell{a.itinerary[i], b.itinerary[i]});
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return PairSet{a.n, std::move(cells)};
}

Tactic parse_tactic(int n, const std::string& line) {
    std::istringstream in(line);
    std::vector<int> itinerary;
    long long v;
    while (in >> v) {
        if (v < INT32_MIN || v > INT32_MAX)
            throw std::invalid_argument("parse_tactic: entry out of range: " + std::to_string(v));
        itinerary.push_back(static_cast<int>(v));
    }
    if (!in.eof()) throw std::invalid_argument("parse_tactic: non-numeric token in: " + line);
    return make_tactic(n, std::move(itinerary));
}

std::string format_tactic(const Tactic& t) {
    std::string out;
    for (int i = 0; i < t.n; ++i) {
        if (i) out += ' ';
        out += std::to_string(t.itinerary[i]);
    }
    return out;
}

Tactic random_tactic(int n, RngStream& rng) {
    std::vector<int> itinerary(n);
    for (int& v : itinerary) v = static_cast<int>(rng.below(n)) + 1;
    return Tactic{n, std::move(itinerary)};
}

std::vector<Tactic> all_tactics(int n, long long cap) {
    long long total = 1;
    for (int i = 0; i < n; ++i) {
        total *= n;
        if (total > cap) throw std::invalid_argument("all_tactics: n^n exceeds cap");
    }
    std::vector<Tactic> out;
    out.reserve(total);
    std::vector<int> itinerary(n, 1);
    for (;;) {
        out.push_back(Tactic{n, itinerary});
        int pos = n - 1;
        while (pos >= 0 && itinerary[pos] == n) itinerary[pos--] = 1;
        if (pos < 0) break;
        ++itinerary[pos];
    }
    return out;
}

}  // namespace rdv
