#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "rdv/tactic.hpp"

using namespace rdv;

TEST_CASE("make_tactic validates its input") {
    CHECK_NOTHROW(make_tactic(3, {1, 2, 3}));
    CHECK_NOTHROW(make_tactic(2, {2, 2}));
    CHECK_THROWS_AS(make_tactic(1, {1}), std::invalid_argument);
    CHECK_THROWS_AS(make_tactic(3, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_tactic(3, {1, 2, 4}), std::invalid_argument);
    CHECK_THROWS_AS(make_tactic(3, {0, 2, 3}), std::invalid_argument);
}

TEST_CASE("image size and the passive/active cut") {
    CHECK(image_size(make_tactic(4, {1, 1, 1, 1})) == 1);
    CHECK(image_size(make_tactic(4, {1, 2, 1, 2})) == 2);
    CHECK(image_size(make_tactic(4, {1, 2, 3, 1})) == 3);

    // Passive means 2 * |image| <= n.
    CHECK(classify(make_tactic(4, {1, 1, 1, 1})) == TacticKind::Passive);
    CHECK(classify(make_tactic(4, {1, 2, 1, 2})) == TacticKind::Passive);
    CHECK(classify(make_tactic(4, {1, 2, 3, 1})) == TacticKind::Active);
    CHECK(classify(make_tactic(2, {1, 1})) == TacticKind::Passive);
    CHECK(classify(make_tactic(2, {1, 2})) == TacticKind::Active);
    // Odd n: image 2 with n = 5 sits on the passive side (4 <= 5).
    CHECK(classify(make_tactic(5, {1, 2, 1, 2, 1})) == TacticKind::Passive);
    CHECK(classify(make_tactic(5, {1, 2, 3, 1, 2})) == TacticKind::Active);
}

TEST_CASE("play walks the bound itineraries round by round") {
    Tactic a = make_tactic(2, {1, 2});
    Tactic b = make_tactic(2, {2, 1});
    Binding id = make_binding(2, {1, 2});
    Binding swap = make_binding(2, {2, 1});
    // Identity binding: round 1 compares 1 vs 2, round 2 compares 2 vs 1.
    CHECK(play(a, b, id) == 3);
    // Swapped binding: round 1 compares pi(1)=2 vs 2.
    CHECK(play(a, b, swap) == 1);

    // Every play result matches the oracle on a small sweep.
    RngStream rng = substream(11, 0);
    for (int trial = 0; trial < 200; ++trial) {
        Tactic ta = random_tactic(4, rng);
        Tactic tb = random_tactic(4, rng);
        Binding pi = random_binding(4, rng);
        CHECK(play(ta, tb, pi) == oracle::play_once(ta, tb, pi.mapping));
    }
}

TEST_CASE("bindings are validated and random bindings are permutations") {
    CHECK_THROWS_AS(make_binding(3, {1, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_binding(3, {1, 2}), std::invalid_argument);
    RngStream rng = substream(5, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Binding b = random_binding(6, rng);
        std::set<int> seen(b.mapping.begin(), b.mapping.end());
        CHECK(seen.size() == 6);
        CHECK(*seen.begin() == 1);
        CHECK(*seen.rbegin() == 6);
    }
}

TEST_CASE("pair_set deduplicates and sorts the constraint cells") {
    Tactic a = make_tactic(3, {1, 1, 2});
    Tactic b = make_tactic(3, {2, 2, 2});
    PairSet f = pair_set(a, b);
    CHECK(f.m() == 2);
    CHECK(f.cells[0] == Cell{1, 2});
    CHECK(f.cells[1] == Cell{2, 2});
    CHECK(std::is_sorted(f.cells.begin(), f.cells.end()));

    // Repeating rounds collapse to one cell.
    PairSet g = pair_set(make_tactic(4, {1, 1, 1, 1}), make_tactic(4, {3, 3, 3, 3}));
    CHECK(g.m() == 1);

    // A pair set never exceeds n cells.
    RngStream rng = substream(19, 0);
    for (int trial = 0; trial < 100; ++trial) {
        PairSet h = pair_set(random_tactic(5, rng), random_tactic(5, rng));
        CHECK(h.m() >= 1);
        CHECK(h.m() <= 5);
    }
}

TEST_CASE("cells_disjoint requires distinct rows and columns") {
    CHECK(cells_disjoint(Cell{1, 1}, Cell{2, 2}));
    CHECK_FALSE(cells_disjoint(Cell{1, 1}, Cell{1, 2}));
    CHECK_FALSE(cells_disjoint(Cell{1, 1}, Cell{2, 1}));
}

TEST_CASE("tactic text round-trips through parse and format") {
    Tactic t = make_tactic(4, {2, 4, 1, 1});
    CHECK(format_tactic(t) == "2 4 1 1");
    CHECK(parse_tactic(4, format_tactic(t)) == t);
    CHECK(parse_tactic(3, "  1\t3 2  ") == make_tactic(3, {1, 3, 2}));

    CHECK_THROWS_AS(parse_tactic(3, "1 4 2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tactic(3, "1 2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tactic(3, "1 2 3 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tactic(3, "1 x 2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tactic(3, ""), std::invalid_argument);
}

TEST_CASE("all_tactics enumerates n^n itineraries in lexicographic order") {
    auto t2 = all_tactics(2);
    REQUIRE(t2.size() == 4);
    CHECK(t2[0].itinerary == std::vector<int>{1, 1});
    CHECK(t2[1].itinerary == std::vector<int>{1, 2});
    CHECK(t2[2].itinerary == std::vector<int>{2, 1});
    CHECK(t2[3].itinerary == std::vector<int>{2, 2});

    auto t3 = all_tactics(3);
    CHECK(t3.size() == 27);
    CHECK(std::is_sorted(t3.begin(), t3.end(),
                         [](const Tactic& a, const Tactic& b) {
                             return a.itinerary < b.itinerary;
                         }));

    CHECK_THROWS_AS(all_tactics(9), std::invalid_argument);
}

TEST_CASE("random_tactic is uniform over itineraries") {
    // n = 2: four tactics, 40000 draws, each bucket within 4 sigma of 10000.
    RngStream rng = substream(23, 0);
    std::map<std::vector<int>, int> counts;
    const int draws = 40000;
    for (int i = 0; i < draws; ++i) {
        ++counts[random_tactic(2, rng).itinerary];
    }
    CHECK(counts.size() == 4);
    double expect = draws / 4.0;
    double sigma = std::sqrt(draws * 0.25 * 0.75);
    for (const auto& [itin, c] : counts) {
        CHECK(std::abs(c - expect) < 4 * sigma);
    }
}
