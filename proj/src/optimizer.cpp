#include "rdv/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rdv/montecarlo.hpp"
#include "rdv/parallel.hpp"
#include "rdv/rng.hpp"
#include "rdv/zoo.hpp"

namespace rdv {

WMatrix build_w_matrix(int n, const ExactLimits& limits) {
    if (n > 4)
        throw CapExceeded("w-matrix limited to n <= 4 (support size n^n), got n = " +
                          std::to_string(n));
    WMatrix w;
    w.n = n;
    w.tactics = all_tactics(n);
    size_t count = w.tactics.size();
    w.wx.resize(count * count);
    w.wf.resize(count * count);
    // Both triangles are computed independently; symmetry of the matrix is a
    // checked property, not an assumption baked into the fill.
    for (size_t i = 0; i < count; ++i) {
        for (size_t j = 0; j < count; ++j) {
            Rat value = expected_waiting_time(w.tactics[i], w.tactics[j], limits);
            w.wf[i * count + j] = value.get_d();
            w.wx[i * count + j] = std::move(value);
        }
    }
    return w;
}

namespace {

struct RestartOutcome {
    double value = 0;
    std::vector<double> x;
    double gap = 0;
    long long iterations = 0;
};

RestartOutcome frank_wolfe(const WMatrix& w, RngStream& rng) {
    size_t count = w.size();
    std::vector<double> x(count);
    double total = 0;
    for (size_t i = 0; i < count; ++i) {
        double u;
        do {
            u = rng.unit();
        } while (u <= 0);
        x[i] = -std::log(u);  // Dirichlet(1,...,1) via normalized exponentials
        total += x[i];
    }
    for (double& v : x) v /= total;

    std::vector<double> y(count, 0);  // y = Wx, maintained incrementally
    for (size_t i = 0; i < count; ++i)
        for (size_t j = 0; j < count; ++j) y[i] += w.wf[i * count + j] * x[j];

    double obj = 0;
    for (size_t i = 0; i < count; ++i) obj += x[i] * y[i];

    RestartOutcome out;
    long long k = 0;
    double gap = 0;
    for (; k < 10000; ++k) {
        size_t s = 0;
        for (size_t i = 1; i < count; ++i)
            if (y[i] < y[s]) s = i;
        gap = 2 * (obj - y[s]);
        if (gap < 1e-10) break;

        // f(gamma) along e_s - x is the quadratic obj + g1*gamma + g2*gamma^2
        // with g1 = -gap. The 2/(k+2) schedule competes with the exact
        // minimizer and the full step; one of the latter two always
        // decreases, so accepted steps are monotone.
        double g1 = -gap;
        double g2 = w.wf[s * count + s] - 2 * y[s] + obj;
        double candidates[3];
        int nc = 0;
        candidates[nc++] = 2.0 / double(k + 2);
        candidates[nc++] = 1.0;
        if (g2 > 0) candidates[nc++] = std::clamp(-g1 / (2 * g2), 0.0, 1.0);
        double best_gamma = candidates[0];
        double best_f = obj + best_gamma * (g1 + best_gamma * g2);
        for (int c = 1; c < nc; ++c) {
            double f = obj + candidates[c] * (g1 + candidates[c] * g2);
            if (f < best_f) {
                best_f = f;
                best_gamma = candidates[c];
            }
        }
        if (best_f >= obj) break;

        double gamma = best_gamma;
        for (size_t i = 0; i < count; ++i) {
            x[i] *= 1 - gamma;
            y[i] = (1 - gamma) * y[i] + gamma * w.wf[i * count + s];
        }
        x[s] += gamma;
        obj = best_f;
    }

    out.value = obj;
    out.x = std::move(x);
    out.gap = gap;
    out.iterations = k;
    return out;
}

}  // namespace

SymOptResult optimize_symmetric_strategy(int n, int restarts, uint64_t seed, int workers,
                                         const ExactLimits& limits) {
    if (restarts < 1) throw std::invalid_argument("need at least one restart");
    WMatrix w = build_w_matrix(n, limits);
    size_t count = w.size();

    std::vector<RestartOutcome> outcomes(static_cast<size_t>(restarts));
    parallel_for(restarts, workers, [&](long long r) {
        RngStream rng = substream(seed, uint64_t(r));
        outcomes[size_t(r)] = frank_wolfe(w, rng);
    });

    int best = 0;
    for (int r = 1; r < restarts; ++r)
        if (outcomes[size_t(r)].value < outcomes[size_t(best)].value) best = r;
    const RestartOutcome& win = outcomes[size_t(best)];

    // Rationalize the float point exactly, renormalize to unit sum, and
    // certify the value with the exact matrix.
    std::vector<Rat> weights(count);
    Rat total(0);
    for (size_t i = 0; i < count; ++i) {
        weights[i] = win.x[i] > 0 ? rat_from_double(win.x[i]) : Rat(0);
        total += weights[i];
    }
    for (size_t i = 0; i < count; ++i)
        if (weights[i] != 0) weights[i] /= total;

    Rat value_exact(0);
    std::vector<StrategyEntry> support;
    for (size_t i = 0; i < count; ++i) {
        if (weights[i] == 0) continue;
        support.push_back({w.tactics[i], weights[i]});
        for (size_t j = 0; j < count; ++j) {
            if (weights[j] == 0) continue;
            value_exact += w.at(i, j) * weights[i] * weights[j];
        }
    }

    SymOptResult result;
    result.strategy = make_table_strategy(n, support);
    result.value_float = win.value;
    result.value_exact = value_exact;
    result.fw_gap = win.gap;
    result.best_restart = best;
    result.iterations = win.iterations;
    return result;
}

namespace {

// Shared grid-then-golden skeleton. objective() must be deterministic; the
// comparator runs on doubles for MC mode and on exact values in exact mode
// via the wrapper below.
template <typename Value>
std::pair<double, Value> grid_golden(int resolution,
                                     const std::function<Value(double)>& objective,
                                     double span_tolerance) {
    if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
    double best_theta = 0;
    Value best_value{};
    int best_index = 0;
    std::vector<Value> grid(static_cast<size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        double theta = double(i) / double(resolution - 1);
        grid[size_t(i)] = objective(theta);
        if (i == 0 || grid[size_t(i)] < best_value) {
            best_value = grid[size_t(i)];
            best_theta = theta;
            best_index = i;
        }
    }
    if (resolution <= 2) return {best_theta, best_value};

    double lo = double(std::max(best_index - 1, 0)) / double(resolution - 1);
    double hi = double(std::min(best_index + 1, resolution - 1)) / double(resolution - 1);
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    Value fc = objective(c);
    Value fd = objective(d);
    auto consider = [&](double theta, const Value& value) {
        if (value < best_value) {
            best_value = value;
            best_theta = theta;
        }
    };
    consider(c, fc);
    consider(d, fd);
    while (hi - lo > span_tolerance) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = objective(c);
            consider(c, fc);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = objective(d);
            consider(d, fd);
        }
    }
    return {best_theta, best_value};
}

}  // namespace

ThetaOptResult optimize_theta_exact(int n, int resolution, const ExactLimits& limits) {
    if (n > 5)
        throw CapExceeded("exact theta search needs the tabulated strategy, capped at n = 5");

    // The truncated table is theta * stay-part + (1-theta) * search-part, so
    // the symmetric objective is an exact quadratic in theta; the three
    // coefficients are fixed bilinear values.
    AWConfig cfg;
    cfg.n = n;
    cfg.mode = BlockMode::TruncatedSingleGame;
    cfg.theta = 1;
    Strategy stay = anderson_weber(cfg);
    cfg.theta = 0;
    Strategy search = anderson_weber(cfg);

    WCache cache;
    Rat phi_ss = bilinear_phi(stay, stay, &cache, limits);
    Rat phi_sr = bilinear_phi(stay, search, &cache, limits);
    Rat phi_rr = bilinear_phi(search, search, &cache, limits);

    // The explicit Rat return type matters: without it the lambda would
    // deduce a gmp expression template referencing the dead locals t and u.
    auto objective = std::function<Rat(double)>([&](double theta) -> Rat {
        Rat t = rat_from_double(theta);
        Rat u = Rat(1) - t;
        return t * t * phi_ss + 2 * t * u * phi_sr + u * u * phi_rr;
    });
    auto [theta, value] = grid_golden<Rat>(resolution, objective, 1e-9);

    ThetaOptResult result;
    result.theta = theta;
    result.value = value.get_d();
    result.value_exact = value;
    result.exact_mode = true;
    return result;
}

ThetaOptResult optimize_theta_mc(int n, int resolution, int horizon, long long trials,
                                 uint64_t seed, int workers) {
    auto objective = std::function<double(double)>([&](double theta) {
        AWConfig cfg;
        cfg.n = n;
        cfg.theta = rat_from_double(theta);
        cfg.mode = BlockMode::MultiBlock;
        cfg.horizon = horizon;
        Strategy s = anderson_weber(cfg);
        return estimate_expected_waiting(s, s, horizon, trials, seed, workers).mean;
    });
    // Refining below the grid pitch chases Monte Carlo noise, so the span
    // tolerance is tied to the grid rather than to machine precision.
    double tolerance = std::max(0.25 / double(std::max(resolution - 1, 1)), 0.01);
    auto [theta, value] = grid_golden<double>(resolution, objective, tolerance);

    ThetaOptResult result;
    result.theta = theta;
    result.value = value;
    result.exact_mode = false;
    result.seed = seed;
    return result;
}

}  // namespace rdv
