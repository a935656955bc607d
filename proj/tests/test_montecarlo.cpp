#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rdv/exact.hpp"
#include "rdv/montecarlo.hpp"
#include "rdv/zoo.hpp"

using namespace rdv;

TEST_CASE("estimator validates its inputs") {
    auto [baby, mommy] = wait_for_mommy_pair(3);
    CHECK_THROWS_AS(estimate_expected_waiting(baby, mommy, 2, 100, 1),
                    std::invalid_argument);  // horizon below n
    CHECK_THROWS_AS(estimate_expected_waiting(baby, mommy, 3, 0, 1),
                    std::invalid_argument);  // no trials

    Strategy no_sampler = point_mass(make_tactic(3, {1, 2, 3}));
    CHECK_THROWS_AS(estimate_expected_waiting(no_sampler, mommy, 3, 10, 1),
                    std::invalid_argument);
}

TEST_CASE("estimates agree with exact waiting times within five sigma") {
    // Waiting against sweeping at n = 5: exact mean 3, always meets.
    auto [baby, mommy] = wait_for_mommy_pair(5);
    MCEstimate e = estimate_expected_waiting(baby, mommy, 5, 100000, 12345);
    CHECK(e.meet_fraction == 1.0);
    CHECK(std::abs(e.mean - 3.0) < 5 * e.std_error);
    CHECK(e.std_error < 0.02);

    // Two parked players at n = 3: exact truncated mean is 3 and the meet
    // probability is 1/3.
    Strategy pa = point_mass(make_tactic(3, {1, 1, 1}));
    Strategy pb = point_mass(make_tactic(3, {2, 2, 2}));
    attach_table_sampler(pa);
    attach_table_sampler(pb);
    MCEstimate c = estimate_expected_waiting(pa, pb, 3, 100000, 777);
    CHECK(std::abs(c.mean - 3.0) < 5 * c.std_error);
    CHECK(std::abs(c.meet_fraction - 1.0 / 3.0) < 0.01);

    // Uniform play at n = 3 against itself at the natural horizon: the
    // simulated game is exactly the truncated game, with mean 65/27.
    Strategy u = uniform_random_strategy(3);
    MCEstimate g = estimate_expected_waiting(u, u, 3, 200000, 2024);
    CHECK(std::abs(g.mean - 65.0 / 27.0) < 5 * g.std_error);
}

TEST_CASE("same seed gives identical results for every worker count") {
    Strategy u = uniform_random_strategy(4);
    MCEstimate one = estimate_expected_waiting(u, u, 12, 20000, 31337, 1);
    MCEstimate three = estimate_expected_waiting(u, u, 12, 20000, 31337, 3);
    MCEstimate eight = estimate_expected_waiting(u, u, 12, 20000, 31337, 8);
    CHECK(one.mean == three.mean);
    CHECK(one.mean == eight.mean);
    CHECK(one.std_error == three.std_error);
    CHECK(one.meet_fraction == eight.meet_fraction);

    MCEstimate other = estimate_expected_waiting(u, u, 12, 20000, 31338, 1);
    CHECK(one.mean != other.mean);
}

TEST_CASE("censored trials report horizon + 1") {
    // Players parked at distinct private locations never meet when the
    // binding misses: mean = p*E[Z | meet] + (1-p)(horizon+1).
    Strategy pa = point_mass(make_tactic(2, {1, 1}));
    Strategy pb = point_mass(make_tactic(2, {2, 2}));
    attach_table_sampler(pa);
    attach_table_sampler(pb);
    MCEstimate e = estimate_expected_waiting(pa, pb, 2, 50000, 5);
    // Meet probability 1/2 (meet at round 1), else censored at 3.
    CHECK(std::abs(e.meet_fraction - 0.5) < 0.02);
    CHECK(std::abs(e.mean - 2.0) < 5 * e.std_error);
}

TEST_CASE("theta scan rows are ordered and reuse one seed") {
    std::vector<double> thetas = {0.0, 0.25, 0.5, 0.75, 1.0};
    auto rows = aw_scan(4, thetas, 12, 4000, 99);
    REQUIRE(rows.size() == 5);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].theta == thetas[i]);
        CHECK(rows[i].estimate.seed == 99);
        CHECK(rows[i].estimate.trials == 4000);
        CHECK(rows[i].estimate.mean > 0);
    }

    std::string csv = aw_scan_csv(rows);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "theta,mean,std_error,meet_fraction,trials,horizon,seed");
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) ++lines;
    }
    CHECK(lines == 5);
}
