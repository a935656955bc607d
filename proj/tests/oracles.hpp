#pragma once

// Slow reference implementations used to check the library's engines.
// Everything here works by walking all n! bindings directly, so these
// deliberately share no code with the rook-polynomial path.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rdv/rational.hpp"
#include "rdv/tactic.hpp"

namespace oracle {

// Waiting time of a single binding: the first round i where the bound copy
// of A's location matches B's location, or n+1 when they never meet.
inline int play_once(const rdv::Tactic& a, const rdv::Tactic& b,
                     const std::vector<int>& pi) {
    for (int i = 0; i < a.n; ++i) {
        if (pi[static_cast<size_t>(a.itinerary[static_cast<size_t>(i)] - 1)] ==
            b.itinerary[static_cast<size_t>(i)]) {
            return i + 1;
        }
    }
    return a.n + 1;
}

inline std::vector<int> first_permutation(int n) {
    std::vector<int> pi(static_cast<size_t>(n));
    std::iota(pi.begin(), pi.end(), 1);
    return pi;
}

// E[Z] over all n! bindings.
inline rdv::Rat expected_waiting(const rdv::Tactic& a, const rdv::Tactic& b) {
    auto pi = first_permutation(a.n);
    long long sum = 0;
    long long total = 0;
    do {
        sum += play_once(a, b, pi);
        ++total;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return rdv::Rat(static_cast<long>(sum)) / rdv::Rat(static_cast<long>(total));
}

// P(Z > k) over all n! bindings.
inline rdv::Rat survival_at(const rdv::Tactic& a, const rdv::Tactic& b, int k) {
    auto pi = first_permutation(a.n);
    long long hits = 0;
    long long total = 0;
    do {
        if (play_once(a, b, pi) > k) ++hits;
        ++total;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return rdv::Rat(static_cast<long>(hits)) / rdv::Rat(static_cast<long>(total));
}

// Number of permutations of [n] that miss every cell in the list.
inline long long avoid_count(const std::vector<rdv::Cell>& cells, int n) {
    auto pi = first_permutation(n);
    long long count = 0;
    do {
        bool hit = false;
        for (const auto& c : cells) {
            if (pi[static_cast<size_t>(c.a - 1)] == c.b) {
                hit = true;
                break;
            }
        }
        if (!hit) ++count;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return count;
}

// E[prod_e X_e] where X_e indicates the permutation passes through cell e.
inline rdv::Rat product_expectation(const std::vector<rdv::Cell>& cells, int n) {
    auto pi = first_permutation(n);
    long long hits = 0;
    long long total = 0;
    do {
        bool all = true;
        for (const auto& c : cells) {
            if (pi[static_cast<size_t>(c.a - 1)] != c.b) {
                all = false;
                break;
            }
        }
        if (all) ++hits;
        ++total;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return rdv::Rat(static_cast<long>(hits)) / rdv::Rat(static_cast<long>(total));
}

struct Moments {
    rdv::Rat mean;
    rdv::Rat variance;
    rdv::Rat fourth_moment;
    rdv::Rat fourth_central;
};

// Raw and central moments of X = number of hit cells, by full enumeration.
inline Moments moments(const std::vector<rdv::Cell>& cells, int n) {
    auto pi = first_permutation(n);
    long long s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    long long total = 0;
    do {
        long long x = 0;
        for (const auto& c : cells) {
            if (pi[static_cast<size_t>(c.a - 1)] == c.b) ++x;
        }
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
        ++total;
    } while (std::next_permutation(pi.begin(), pi.end()));
    rdv::Rat t(static_cast<long>(total));
    Moments m;
    m.mean = rdv::Rat(static_cast<long>(s1)) / t;
    rdv::Rat ex2 = rdv::Rat(static_cast<long>(s2)) / t;
    rdv::Rat ex3 = rdv::Rat(static_cast<long>(s3)) / t;
    rdv::Rat ex4 = rdv::Rat(static_cast<long>(s4)) / t;
    m.variance = ex2 - m.mean * m.mean;
    m.fourth_moment = ex4;
    m.fourth_central = ex4 - 4 * m.mean * ex3 + 6 * m.mean * m.mean * ex2 -
                       3 * m.mean * m.mean * m.mean * m.mean;
    return m;
}

// Minimum of the symmetric objective x^T W x over the simplex for n=2,
// by brute grid search plus one local refinement pass. The matrix is
// built here from expected_waiting so the whole chain stays independent
// of the optimizer under test.
inline double sym_grid_min_n2() {
    std::vector<rdv::Tactic> ts;
    for (int u = 1; u <= 2; ++u) {
        for (int c = 1; c <= 2; ++c) {
            ts.push_back(rdv::make_tactic(2, {u, c}));
        }
    }
    double w[4][4];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            w[i][j] = expected_waiting(ts[static_cast<size_t>(i)],
                                       ts[static_cast<size_t>(j)]).get_d();
        }
    }
    auto value = [&](double x0, double x1, double x2, double x3) {
        double x[4] = {x0, x1, x2, x3};
        double v = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) v += w[i][j] * x[i] * x[j];
        }
        return v;
    };

    const int g = 100;
    double best = 1e100;
    double bx[4] = {1.0, 0.0, 0.0, 0.0};
    for (int i = 0; i <= g; ++i) {
        for (int j = 0; i + j <= g; ++j) {
            for (int k = 0; i + j + k <= g; ++k) {
                int l = g - i - j - k;
                double v = value(i / double(g), j / double(g), k / double(g),
                                 l / double(g));
                if (v < best) {
                    best = v;
                    bx[0] = i / double(g);
                    bx[1] = j / double(g);
                    bx[2] = k / double(g);
                    bx[3] = l / double(g);
                }
            }
        }
    }

    // Refine around the coarse winner on a 2e-4 pitch. The box is clipped
    // to the simplex by recomputing the last coordinate.
    const double span = 2.0 / g;
    const double step = 2e-4;
    for (double x0 = std::max(0.0, bx[0] - span); x0 <= std::min(1.0, bx[0] + span); x0 += step) {
        for (double x1 = std::max(0.0, bx[1] - span); x1 <= std::min(1.0, bx[1] + span); x1 += step) {
            for (double x2 = std::max(0.0, bx[2] - span); x2 <= std::min(1.0, bx[2] + span); x2 += step) {
                double x3 = 1.0 - x0 - x1 - x2;
                if (x3 < -1e-12) continue;
                double v = value(x0, x1, x2, std::max(0.0, x3));
                if (v < best) best = v;
            }
        }
    }
    return best;
}

}  // namespace oracle
