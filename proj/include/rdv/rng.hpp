#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rdv/rational.hpp"

namespace rdv {

// Stafford variant-13 finalizer (the splitmix64 output mix).
inline uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// splitmix64: a counter-based stream. Streams for distinct substream keys
// start at hashed, well-separated states, so any trial/pair/restart index
// gets its own stream regardless of how work is split across workers.
struct RngStream {
    uint64_t state = 0;

    RngStream() = default;
    explicit RngStream(uint64_t s) : state(s) {}

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        return mix64(state);
    }

    // Unbiased integer in [0, bound).
    uint64_t below(uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("RngStream::below: bound 0");
        uint64_t threshold = (-bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [0,1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Exact Bernoulli(p) for rational p whose denominator fits in 64 bits.
    bool bernoulli(const Rat& p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        if (!p.get_den().fits_ulong_p() && !(p.get_den() <= Int("18446744073709551615")))
            throw std::invalid_argument("bernoulli: denominator too large");
        uint64_t den = mpz_get_ui(p.get_den().get_mpz_t());
        uint64_t num = mpz_get_ui(p.get_num().get_mpz_t());
        return below(den) < num;
    }

    // Fisher-Yates; with k < v.size() only the first k slots end up shuffled.
    template <class T>
    void partial_shuffle(std::vector<T>& v, size_t k) {
        size_t n = v.size();
        if (k > n) k = n;
        for (size_t i = 0; i + 1 < n && i < k; ++i) {
            size_t j = i + static_cast<size_t>(below(n - i));
            std::swap(v[i], v[j]);
        }
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        partial_shuffle(v, v.size());
    }
};

// Independent stream for (seed, index) pairs; `lane` separates roles that
// share an index (e.g. player A / player B / binding within one trial).
inline RngStream substream(uint64_t seed, uint64_t index, uint64_t lane = 0) {
    uint64_t k = mix64(seed ^ 0xD1B54A32D192ED03ULL);
    k = mix64(k + 0x9E3779B97F4A7C15ULL * (index + 1));
    k = mix64(k + 0x8CB92BA72F3D8DD7ULL * (lane + 1));
    return RngStream(k);
}

}  // namespace rdv
