#pragma once

#include <utility>

#include "rdv/rational.hpp"
#include "rdv/strategy.hpp"

namespace rdv {

// How an Anderson-Weber player treats the game horizon. TruncatedSingleGame
// plays one full block of n-1 rounds plus the first round of a fresh block
// (n rounds total); MultiBlock keeps drawing fresh blocks up to a caller
// horizon.
enum class BlockMode { TruncatedSingleGame, MultiBlock };

struct AWConfig {
    int n = 0;
    Rat theta;  // stay probability, in [0,1]
    BlockMode mode = BlockMode::TruncatedSingleGame;
    int horizon = 0;  // required (>= 1) in MultiBlock mode
};

// Point-mass baby (constant location 1) and mommy (identity sweep). Samplers
// extend past n rounds: baby keeps waiting, mommy sweeps cyclically.
std::pair<Strategy, Strategy> wait_for_mommy_pair(int n);

// Per block of n-1 rounds: with probability theta stay at one uniform
// location, otherwise sweep n-1 distinct uniform locations in uniform order.
// Explicit support table built in TruncatedSingleGame mode for n <= 5; the
// sampler is attached in every mode.
Strategy anderson_weber(const AWConfig& cfg);

// Each round an independent uniform location. Explicit table (size n^n) for
// n <= 4; sampler for every n.
Strategy uniform_random_strategy(int n);

}  // namespace rdv
