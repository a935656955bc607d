#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "rdv/rational.hpp"
#include "rdv/strategy.hpp"
#include "rdv/tactic.hpp"

namespace rdv {

// Raised when an input exceeds the configured exact-mode size caps.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an exact-mode operation is given a sampler-only strategy.
struct SamplerOnlyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ExactLimits {
    int max_enum_n = 10;  // full n! enumeration cap
    int max_cells = 24;   // inclusion-exclusion backtracking cap on |cells|
};

const ExactLimits& default_limits();

// r[j] = number of j-subsets of `cells` that are pairwise disjoint (no two
// sharing a row or a column); rook polynomial coefficients, computed by
// backtracking. With max_size >= 0 the vector stops at that size.
std::vector<long long> rook_vector(const std::vector<Cell>& cells, int max_size = -1);

// Number of permutations pi of [1..n] with pi(a) != b for every cell (a,b):
// sum_j (-1)^j r_j (n-j)!.
Int count_avoiding_permutations(const std::vector<Cell>& cells, int n,
                                const ExactLimits& limits = default_limits());

// P(Z > k) for k = 0..n, exact, over the uniform random binding.
struct SurvivalCurve {
    int n = 0;
    std::vector<Rat> values;
};

SurvivalCurve survival_curve(const Tactic& a, const Tactic& b,
                             const ExactLimits& limits = default_limits());

// w(tau_A, tau_B) = E[Z] = sum_k P(Z > k).
Rat expected_waiting_time(const Tactic& a, const Tactic& b,
                          const ExactLimits& limits = default_limits());

// P(X = 0): no rendezvous during the n rounds.
Rat prob_no_rendezvous(const Tactic& a, const Tactic& b,
                       const ExactLimits& limits = default_limits());

// Exact moments of X = |F ∩ E(pi)| via factorial moments:
// E[X(X-1)...(X-j+1)] = r_j * j! * (n-j)!/n!.
struct MomentReport {
    long long m = 0;
    Rat mean;            // E X = m/n
    Rat variance;        // Var X
    Rat fourth_moment;   // E X^4
    Rat fourth_central;  // E |X - E X|^4
};

MomentReport moments(const Tactic& a, const Tactic& b,
                     const ExactLimits& limits = default_limits());
MomentReport moments_of_cells(const std::vector<Cell>& cells, int n,
                              const ExactLimits& limits = default_limits());

// E[X_e X_f] for distinct cells: 1/(n(n-1)) when disjoint, else 0.
Rat pairwise_product_expectation(const Cell& e, const Cell& f, int n);

// E[prod_{e in subset} X_e] by inclusion-exclusion over avoid-counts; an
// independent route to the same product expectations.
Rat product_expectation(const std::vector<Cell>& subset, int n,
                        const ExactLimits& limits = default_limits());

// Unordered pairs {e,f} of cells with distinct rows and distinct columns.
long long disjoint_pair_count(const PairSet& f);

// Full-enumeration engine: joint statistics of (Z, X) over all n! bindings.
struct EnumStats {
    int n = 0;
    long long total = 0;              // n!
    std::vector<long long> z_hist;    // index 1..n+1 (index 0 unused)
    std::vector<long long> x_hist;    // index 0..m
};

EnumStats enumerate_pair(const Tactic& a, const Tactic& b,
                         const ExactLimits& limits = default_limits());

SurvivalCurve survival_from_enum(const EnumStats& st);
Rat waiting_time_from_enum(const EnumStats& st);
Rat prob_no_rendezvous_from_enum(const EnumStats& st);
MomentReport moments_from_enum(const EnumStats& st);

// Memo for w(tau_A, tau_B) keyed by the ordered itinerary pair.
struct WCache {
    std::map<std::pair<std::vector<int>, std::vector<int>>, Rat> memo;

    const Rat& w(const Tactic& a, const Tactic& b, const ExactLimits& limits = default_limits());
};

// Phi over raw weight vectors (not necessarily normalized):
// sum w(tau_A,tau_B) * x_{tau_A} * y_{tau_B}.
Rat phi_weighted(const std::vector<StrategyEntry>& xs, const std::vector<StrategyEntry>& ys,
                 WCache& cache, const ExactLimits& limits = default_limits());

// E W(sigma_A, sigma_B) for table strategies; throws SamplerOnlyError when
// either strategy has no table.
Rat bilinear_phi(const Strategy& a, const Strategy& b, WCache* cache = nullptr,
                 const ExactLimits& limits = default_limits());

}  // namespace rdv
