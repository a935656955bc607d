#include "rdv/montecarlo.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rdv/parallel.hpp"
#include "rdv/rng.hpp"
#include "rdv/zoo.hpp"

namespace rdv {

namespace {

// Trials are grouped in fixed-size chunks with one sum slot per chunk. The
// chunk layout never depends on the worker count, and integer addition is
// associative, so any scheduling reduces to the same totals.
constexpr long long kChunk = 4096;

struct ChunkSums {
    uint64_t w = 0, w2 = 0, meets = 0;
};

}  // namespace

MCEstimate estimate_expected_waiting(const Strategy& a, const Strategy& b, int horizon,
                                     long long trials, uint64_t seed, int workers) {
    if (!a.has_sampler() || !b.has_sampler())
        throw std::invalid_argument("estimate_expected_waiting needs samplers on both strategies");
    if (a.n != b.n) throw std::invalid_argument("strategies live on different location counts");
    if (horizon < a.n)
        throw std::invalid_argument("horizon " + std::to_string(horizon) +
                                    " is shorter than the game length n = " + std::to_string(a.n));
    if (trials < 1) throw std::invalid_argument("need at least one trial");

    int n = a.n;
    long long chunks = (trials + kChunk - 1) / kChunk;
    std::vector<ChunkSums> slots(static_cast<size_t>(chunks));

    parallel_for(chunks, workers, [&](long long c) {
        std::vector<int> itin_a, itin_b;
        std::vector<int> binding(static_cast<size_t>(n));
        ChunkSums sums;
        long long hi = std::min(trials, (c + 1) * kChunk);
        for (long long i = c * kChunk; i < hi; ++i) {
            RngStream rng = substream(seed, uint64_t(i));
            a.sampler(rng, horizon, itin_a);
            b.sampler(rng, horizon, itin_b);
            std::iota(binding.begin(), binding.end(), 1);
            rng.shuffle(binding);

            int w = horizon + 1;
            for (int t = 0; t < horizon; ++t) {
                if (binding[size_t(itin_a[size_t(t)]) - 1] == itin_b[size_t(t)]) {
                    w = t + 1;
                    break;
                }
            }
            sums.w += uint64_t(w);
            sums.w2 += uint64_t(w) * uint64_t(w);
            if (w <= horizon) ++sums.meets;
        }
        slots[size_t(c)] = sums;
    });

    ChunkSums total;
    for (const ChunkSums& s : slots) {
        total.w += s.w;
        total.w2 += s.w2;
        total.meets += s.meets;
    }

    MCEstimate est;
    est.trials = trials;
    est.horizon = horizon;
    est.seed = seed;
    est.mean = double(total.w) / double(trials);
    if (trials > 1) {
        double var =
            (double(total.w2) - double(total.w) * double(total.w) / double(trials)) /
            double(trials - 1);
        est.std_error = std::sqrt(std::max(var, 0.0) / double(trials));
    }
    est.meet_fraction = double(total.meets) / double(trials);
    return est;
}

std::vector<AWScanRow> aw_scan(int n, const std::vector<double>& thetas, int horizon,
                               long long trials, uint64_t seed, int workers) {
    std::vector<AWScanRow> rows;
    rows.reserve(thetas.size());
    for (double theta : thetas) {
        AWConfig cfg;
        cfg.n = n;
        cfg.theta = rat_from_double(theta);
        cfg.mode = BlockMode::MultiBlock;
        cfg.horizon = horizon;
        Strategy s = anderson_weber(cfg);
        rows.push_back({theta, estimate_expected_waiting(s, s, horizon, trials, seed, workers)});
    }
    return rows;
}

std::string aw_scan_csv(const std::vector<AWScanRow>& rows) {
    std::ostringstream out;
    out.precision(10);
    out << "theta,mean,std_error,meet_fraction,trials,horizon,seed\n";
    for (const AWScanRow& r : rows) {
        out << r.theta << ',' << r.estimate.mean << ',' << r.estimate.std_error << ','
            << r.estimate.meet_fraction << ',' << r.estimate.trials << ',' << r.estimate.horizon
            << ',' << r.estimate.seed << '\n';
    }
    return out.str();
}

}  // namespace rdv
