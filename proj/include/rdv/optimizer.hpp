#pragma once

#include <cstdint>
#include <vector>

#include "rdv/exact.hpp"
#include "rdv/strategy.hpp"
#include "rdv/tactic.hpp"

namespace rdv {

// Dense waiting-time matrix over all of Theta_n (lexicographic order), held
// both exactly and as doubles. Only built for n <= 4.
struct WMatrix {
    int n = 0;
    std::vector<Tactic> tactics;
    std::vector<Rat> wx;     // row-major, |Theta|^2 entries
    std::vector<double> wf;  // same values as doubles

    size_t size() const { return tactics.size(); }
    const Rat& at(size_t i, size_t j) const { return wx[i * tactics.size() + j]; }
};

WMatrix build_w_matrix(int n, const ExactLimits& limits = default_limits());

struct SymOptResult {
    Strategy strategy;  // exact rational weights, zero entries dropped
    double value_float = 0;
    Rat value_exact;  // exact re-evaluation of the returned point
    double fw_gap = 0;
    int best_restart = -1;
    long long iterations = 0;
};

// Frank-Wolfe descent of a -> Phi<a,a> over the tactic simplex, multistart
// from Dirichlet(1,...,1) draws. Best local minimum only; the form is not
// positive semidefinite so no global claim is made.
SymOptResult optimize_symmetric_strategy(int n, int restarts = 32, uint64_t seed = 1,
                                         int workers = 1,
                                         const ExactLimits& limits = default_limits());

struct ThetaOptResult {
    double theta = 0;
    double value = 0;  // objective at theta; MC mean in mc mode
    Rat value_exact;   // exact mode only
    bool exact_mode = false;
    uint64_t seed = 0;
};

// Coarse grid of `resolution` points over [0,1] followed by golden-section
// refinement inside the bracketing neighbors (skipped when resolution <= 2:
// a two-point grid just returns the better endpoint). The exact objective is
// the symmetric truncated-game value; theta enters as an exact rational, so
// the whole search is deterministic.
ThetaOptResult optimize_theta_exact(int n, int resolution,
                                    const ExactLimits& limits = default_limits());

// Same search shape with a Monte Carlo objective; every probe reuses the
// same seed (common random numbers), making the result seed-reproducible.
ThetaOptResult optimize_theta_mc(int n, int resolution, int horizon, long long trials,
                                 uint64_t seed, int workers = 1);

}  // namespace rdv
