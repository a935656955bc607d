#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rdv {

// Worker count: explicit request wins, then RDV_WORKERS, then 1.
inline int default_workers() {
    if (const char* env = std::getenv("RDV_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

inline int resolve_workers(int requested) { return requested >= 1 ? requested : default_workers(); }

// Runs fn(i) for every i in [0, count) across at most `workers` threads.
// Each index is visited exactly once; callers keep determinism by writing
// only to per-index slots, so results never depend on scheduling.
template <typename Fn>
void parallel_for(long long count, int workers, Fn&& fn) {
    if (count <= 0) return;
    long long lanes = std::min<long long>(std::max(workers, 1), count);
    if (lanes == 1) {
        for (long long i = 0; i < count; ++i) fn(i);
        return;
    }

    std::mutex fail_mutex;
    std::exception_ptr failure;
    std::vector<std::thread> threads;
    threads.reserve(size_t(lanes));
    for (long long t = 0; t < lanes; ++t) {
        long long lo = count * t / lanes;
        long long hi = count * (t + 1) / lanes;
        threads.emplace_back([&, lo, hi] {
            try {
                for (long long i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (std::thread& th : threads) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace rdv
