#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdv/exact.hpp"
#include "rdv/rng.hpp"
#include "rdv/strategy.hpp"
#include "rdv/tactic.hpp"

namespace rdv {

// Raised when a verifier reaches a state the verified statement rules out;
// always a bug somewhere, never a soft failure.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// A verifier's verdict. When several inequalities are checked at once, lhs
// and rhs describe the check with the smallest margin and context carries the
// rest; pass is the conjunction either way. A false pass with
// hypotheses_hold=false never happens: hypothesis failure makes the claim
// vacuous, hence pass=true with the computed numbers still reported.
struct BoundReport {
    std::string name;
    bool hypotheses_hold = true;
    Rat lhs;
    Rat rhs;
    Rat margin;  // lhs - rhs
    bool pass = false;
    std::string context;
};

// w >= (n+1)/2 + beta^2 n/2 with beta = exact P(no rendezvous).
BoundReport verify_pb_waiting(const Tactic& a, const Tactic& b,
                              const ExactLimits& limits = default_limits());

// E X = m/n, E X^4 <= 15, E|X-EX|^4 <= 16, and the falling-factorial caps on
// product expectations over cell pairs/triples/quadruples (all of them up to
// tuple_budget per arity, an evenly strided subsample beyond that).
BoundReport verify_moment_claims(const Tactic& a, const Tactic& b, long long tuple_budget = 512,
                                 const ExactLimits& limits = default_limits());

// (1-lambda)^2 (E Z)^2 / E Z^2 for non-negative Z.
Rat paley_zygmund_bound(const Rat& ez, const Rat& ez2, const Rat& lambda);

// m >= (1-sqrt(alpha/2)) n and Var X >= alpha imply P(X=0) >= alpha^2/128.
// The square-root comparison is done squared, in exact rationals.
BoundReport verify_var_pb(const Tactic& a, const Tactic& b, const Rat& alpha,
                          const ExactLimits& limits = default_limits());

// D >= alpha C(n,2) disjoint pairs imply Var X >= alpha, with alpha set to
// its largest justified value D/C(n,2); also re-derives every pairwise
// covariance from inclusion-exclusion and checks
// Cov(X_e,X_f) = [disjoint]/(n(n-1)) - 1/n^2.
BoundReport verify_dp_var(const Tactic& a, const Tactic& b,
                          const ExactLimits& limits = default_limits());

// m <= 11n/12 implies P(X=0) >= 1/12.
BoundReport markov_corner_case(const Tactic& a, const Tactic& b,
                               const ExactLimits& limits = default_limits());

// Partition found by the constructive edge-splitting argument: e1 lives on
// a1 x b1 and e2 on a2 x b2 (or the cross classes), so the two edge sets
// share no endpoints.
struct BipartiteSplit {
    std::vector<int> a1, a2;  // left vertex partition
    std::vector<int> b1, b2;  // right vertex partition
    std::vector<Cell> e1, e2;
    long long deg_a1 = 0, deg_a2 = 0, deg_b1 = 0, deg_b2 = 0;
};

// Degree-sorted prefix construction. Preconditions (exact rational checks):
// 11n/12 <= |E| <= n and max degree <= 2n/3. Throws InvariantViolation if no
// valid class pair exists, which the underlying statement rules out.
BipartiteSplit split_disjoint_edges(const PairSet& graph);

// Random bipartite graph satisfying split_disjoint_edges' preconditions;
// mixes flat and deliberately skewed degree profiles.
PairSet random_split_graph(int n, RngStream& rng);

// Same-kind waiting-time gap: over exhaustive (n <= 4) or sampled same-kind
// tactic pairs, min(w - (n+1)/2) >= 2^-35 n and min P(X=0) >= 2^-17.
// Sampled mode spends half the budget on passive/passive pairs and half on
// active/active pairs, via rejection from uniform tactics.
struct GapScanConfig {
    int n = 4;
    bool exhaustive = true;
    long long samples = 10000;  // sampled mode only
    uint64_t seed = 1;
    int workers = 1;
};

BoundReport verify_same_kind_gap(const GapScanConfig& cfg,
                                 const ExactLimits& limits = default_limits());

// Splits a table strategy into passive and active parts and checks, exactly:
// the decomposition identity of Phi, the three per-part floors (delta=2^-35
// on same-kind parts), and the total floor (n+1)/2 + 2^-36 n.
BoundReport verify_theorem1_assembly(const Strategy& s, WCache* cache = nullptr,
                                     const ExactLimits& limits = default_limits());

}  // namespace rdv
