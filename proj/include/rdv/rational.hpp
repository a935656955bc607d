#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rdv {

// Exact arbitrary-precision rational / integer. Every probability and
// expectation in the exact engine is a Rat; floats appear only in the
// Monte Carlo and optimizer float paths.
using Rat = mpq_class;
using Int = mpz_class;

// n!, cached per n.
const Int& factorial(int n);

// falling factorial n*(n-1)*...*(n-k+1)
Int falling(int n, int k);

// 2^e for possibly negative e.
Rat pow2(int e);

Rat rat(long num, long den = 1);

// Exact conversion of a finite double (dyadic rational).
Rat rat_from_double(double x);

// Accepts "p/q", an integer, or a plain decimal like "0.247" (parsed
// exactly as 247/1000). Throws std::invalid_argument on anything else.
Rat parse_rat(const std::string& text);

// Canonical "p/q" (plain "p" when the denominator is 1).
std::string fraction_str(const Rat& r);

// Decimal rendering with the given number of significant digits,
// %g-style (positional or scientific as appropriate).
std::string decimal_str(const Rat& r, int sig_digits = 12);

}  // namespace rdv
