#include "rdv/zoo.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rdv/rng.hpp"
#include "rdv/tactic.hpp"

namespace rdv {

namespace {

Sampler block_renewal_sampler(int n, Rat theta) {
    return [n, theta](RngStream& rng, int length, std::vector<int>& out) {
        out.clear();
        out.reserve(size_t(length));
        std::vector<int> sweep(static_cast<size_t>(n));
        while (int(out.size()) < length) {
            if (rng.bernoulli(theta)) {
                int u = int(rng.below(uint64_t(n))) + 1;
                for (int r = 0; r < n - 1 && int(out.size()) < length; ++r) out.push_back(u);
            } else {
                std::iota(sweep.begin(), sweep.end(), 1);
                rng.partial_shuffle(sweep, n - 1);
                for (int r = 0; r < n - 1 && int(out.size()) < length; ++r)
                    out.push_back(sweep[size_t(r)]);
            }
        }
    };
}

// Truncated-game support: every block-1 realization extended by one round of
// a fresh block. The fresh block's first round is uniform over [1..n] on both
// branches, so it contributes a flat 1/n factor.
Strategy aw_table(int n, const Rat& theta) {
    std::map<std::vector<int>, Rat> weights;
    Rat nn(n);

    Rat stay_w = theta / (nn * nn);
    for (int u = 1; u <= n; ++u) {
        std::vector<int> itin(size_t(n), u);
        for (int c = 1; c <= n; ++c) {
            itin.back() = c;
            weights[itin] += stay_w;
        }
    }

    // Ordered (n-1)-subsets of [n] are exactly the length-(n-1) prefixes of
    // permutations of [n], one permutation each.
    Rat search_w = (Rat(1) - theta) / (Rat(factorial(n)) * nn);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        std::vector<int> itin(perm.begin(), perm.end() - 1);
        itin.push_back(0);
        for (int c = 1; c <= n; ++c) {
            itin.back() = c;
            weights[itin] += search_w;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<StrategyEntry> support;
    support.reserve(weights.size());
    for (const auto& [itin, w] : weights) support.push_back({make_tactic(n, itin), w});
    return make_table_strategy(n, support);
}

}  // namespace

std::pair<Strategy, Strategy> wait_for_mommy_pair(int n) {
    Strategy baby = point_mass(make_tactic(n, std::vector<int>(size_t(n), 1)));
    baby.sampler = [](RngStream&, int length, std::vector<int>& out) {
        out.assign(size_t(length), 1);
    };

    std::vector<int> identity(static_cast<size_t>(n));
    std::iota(identity.begin(), identity.end(), 1);
    Strategy mommy = point_mass(make_tactic(n, identity));
    mommy.sampler = [n](RngStream&, int length, std::vector<int>& out) {
        out.resize(size_t(length));
        for (int i = 0; i < length; ++i) out[size_t(i)] = i % n + 1;
    };
    return {std::move(baby), std::move(mommy)};
}

Strategy anderson_weber(const AWConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("anderson_weber needs n >= 2");
    if (cfg.theta < 0 || cfg.theta > 1)
        throw std::invalid_argument("theta must lie in [0,1], got " + fraction_str(cfg.theta));
    if (cfg.mode == BlockMode::MultiBlock && cfg.horizon < 1)
        throw std::invalid_argument("MultiBlock mode needs a positive horizon");

    Strategy s;
    if (cfg.mode == BlockMode::TruncatedSingleGame && cfg.n <= 5) s = aw_table(cfg.n, cfg.theta);
    s.n = cfg.n;
    s.sampler = block_renewal_sampler(cfg.n, cfg.theta);
    return s;
}

Strategy uniform_random_strategy(int n) {
    if (n < 2) throw std::invalid_argument("uniform_random_strategy needs n >= 2");
    Strategy s;
    if (n <= 4) {
        std::vector<StrategyEntry> support;
        Int count;
        mpz_ui_pow_ui(count.get_mpz_t(), (unsigned long)n, (unsigned long)n);
        Rat each = Rat(1) / Rat(count);
        for (const Tactic& t : all_tactics(n)) support.push_back({t, each});
        s = make_table_strategy(n, support);
    }
    s.n = n;
    s.sampler = [n](RngStream& rng, int length, std::vector<int>& out) {
        out.resize(size_t(length));
        for (int i = 0; i < length; ++i) out[size_t(i)] = int(rng.below(uint64_t(n))) + 1;
    };
    return s;
}

}  // namespace rdv
