#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rdv/bounds.hpp"
#include "rdv/optimizer.hpp"
#include "rdv/zoo.hpp"

using namespace rdv;

TEST_CASE("waiting-time matrix at n = 2: every entry frozen") {
    WMatrix w = build_w_matrix(2);
    REQUIRE(w.size() == 4);
    // Tactic order is lexicographic: (1,1), (1,2), (2,1), (2,2).
    Rat two(2);
    Rat three_halves = Rat(3) / 2;
    Rat expect[4][4] = {{two, three_halves, three_halves, two},
                        {three_halves, two, two, three_halves},
                        {three_halves, two, two, three_halves},
                        {two, three_halves, three_halves, two}};
    for (size_t i = 0; i < 4; ++i) {
        for (size_t j = 0; j < 4; ++j) {
            CHECK(w.at(i, j) == expect[i][j]);
            CHECK(w.wf[i * 4 + j] == expect[i][j].get_d());
        }
    }
    CHECK_THROWS_AS(build_w_matrix(5), CapExceeded);
}

TEST_CASE("matrix entries match the brute-force oracle at n = 3") {
    WMatrix w = build_w_matrix(3);
    REQUIRE(w.size() == 27);
    RngStream rng = substream(67, 0);
    for (int trial = 0; trial < 40; ++trial) {
        size_t i = rng.below(27);
        size_t j = rng.below(27);
        CHECK(w.at(i, j) == oracle::expected_waiting(w.tactics[i], w.tactics[j]));
    }
}

TEST_CASE("symmetric optimizer at n = 2 hits the grid-oracle optimum") {
    SymOptResult r = optimize_symmetric_strategy(2, 8, 1);
    double oracle_min = oracle::sym_grid_min_n2();
    CHECK(std::abs(r.value_float - oracle_min) < 1e-6);
    CHECK(std::abs(r.value_exact.get_d() - oracle_min) < 1e-6);
    CHECK(r.fw_gap < 1e-8);

    // The certified value can never undercut the true optimum 7/4.
    CHECK(r.value_exact >= Rat(7) / 4);
    CHECK(r.value_exact.get_d() < 1.75 + 1e-9);
}

TEST_CASE("symmetric optimizer clears the floor at n = 2, 3, 4") {
    for (int n = 2; n <= 4; ++n) {
        int restarts = n == 4 ? 4 : 8;
        SymOptResult r = optimize_symmetric_strategy(n, restarts, 7);
        // Certified exact value sits above (n+1)/2 with room to spare. The
        // descent gap decays like 1/iterations on a face, so only its order
        // of magnitude is pinned here.
        Rat floor = Rat(n + 1) / 2 + Rat(n) / pow2(36);
        CHECK(r.value_exact >= floor);
        CHECK(r.fw_gap < 1e-3);

        // The returned strategy is a genuine distribution and re-evaluates
        // to the certified value.
        Rat total(0);
        for (const auto& e : r.strategy.support) {
            CHECK(e.weight > 0);
            total += e.weight;
        }
        CHECK(total == 1);
        CHECK(bilinear_phi(r.strategy, r.strategy) == r.value_exact);
    }
}

TEST_CASE("symmetric optimizer is deterministic per seed and worker count") {
    SymOptResult a = optimize_symmetric_strategy(3, 6, 42, 1);
    SymOptResult b = optimize_symmetric_strategy(3, 6, 42, 5);
    CHECK(a.value_exact == b.value_exact);
    CHECK(a.best_restart == b.best_restart);
    CHECK(format_strategy(a.strategy) == format_strategy(b.strategy));
}

TEST_CASE("exact theta search: flat profile at n = 2, interior dip at n = 3") {
    // At n = 2 the block distribution is uniform for every theta, so the
    // objective is constant 7/4.
    ThetaOptResult flat = optimize_theta_exact(2, 11);
    CHECK(flat.exact_mode);
    CHECK(flat.value_exact == Rat(7) / 4);

    // At n = 3 the curve dips strictly inside (0,1): the optimum beats both
    // pure waiting and pure sweeping.
    ThetaOptResult r = optimize_theta_exact(3, 21);
    CHECK(r.theta > 0.0);
    CHECK(r.theta < 1.0);
    AWConfig stay{3, Rat(1), BlockMode::TruncatedSingleGame, 0};
    AWConfig sweep{3, Rat(0), BlockMode::TruncatedSingleGame, 0};
    Rat at_one = bilinear_phi(anderson_weber(stay), anderson_weber(stay));
    Rat at_zero = bilinear_phi(anderson_weber(sweep), anderson_weber(sweep));
    CHECK(r.value_exact < at_one);
    CHECK(r.value_exact < at_zero);
    CHECK(r.value_exact >= 2);  // the universal floor (n+1)/2

    CHECK_THROWS_AS(optimize_theta_exact(6, 11), CapExceeded);
}

TEST_CASE("exact theta objective matches direct evaluation on the quadratic") {
    // The search evaluates theta through a quadratic decomposition; direct
    // table evaluation at probe values must give identical rationals.
    for (int n : {3, 4}) {
        for (int num = 0; num <= 4; ++num) {
            Rat theta = Rat(num) / 4;
            AWConfig cfg{n, theta, BlockMode::TruncatedSingleGame, 0};
            Strategy s = anderson_weber(cfg);
            Rat direct = bilinear_phi(s, s);

            AWConfig c1{n, Rat(1), BlockMode::TruncatedSingleGame, 0};
            AWConfig c0{n, Rat(0), BlockMode::TruncatedSingleGame, 0};
            Strategy stay = anderson_weber(c1);
            Strategy sweep = anderson_weber(c0);
            WCache cache;
            Rat pss = bilinear_phi(stay, stay, &cache);
            Rat psr = bilinear_phi(stay, sweep, &cache);
            Rat prs = bilinear_phi(sweep, stay, &cache);
            Rat prr = bilinear_phi(sweep, sweep, &cache);
            // The cross terms agree by symmetry of the two-table mixture.
            CHECK(psr == prs);
            Rat u = Rat(1) - theta;
            CHECK(direct == theta * theta * pss + 2 * theta * u * psr + u * u * prr);
        }
    }
}

TEST_CASE("mc theta search is seed-reproducible") {
    ThetaOptResult a = optimize_theta_mc(4, 5, 12, 2000, 11, 1);
    ThetaOptResult b = optimize_theta_mc(4, 5, 12, 2000, 11, 4);
    CHECK_FALSE(a.exact_mode);
    CHECK(a.seed == 11);
    CHECK(a.theta == b.theta);
    CHECK(a.value == b.value);
    CHECK(a.theta >= 0.0);
    CHECK(a.theta <= 1.0);
}
