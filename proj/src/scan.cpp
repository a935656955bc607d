#include "rdv/scan.hpp"

#include <algorithm>

#include "rdv/bounds.hpp"
#include "rdv/parallel.hpp"
#include "rdv/rng.hpp"
#include "rdv/tactic.hpp"

namespace rdv {

namespace {

constexpr long long kChunk = 256;
constexpr size_t kMaxFailures = 10;

struct ChunkStat {
    long long pairs = 0;
    long long engine_mismatches = 0;
    long long floor_violations = 0;
    long long moment_violations = 0;
    long long lemma_failures = 0;
    bool any_margin = false;
    Rat min_floor_margin;
    std::vector<std::string> failures;

    void note_failure(std::string what) {
        if (failures.size() < kMaxFailures) failures.push_back(std::move(what));
    }
};

void scan_pair(const Tactic& a, const Tactic& b, const PairScanConfig& cfg,
               const ExactLimits& limits, bool with_enum, ChunkStat& stat) {
    ++stat.pairs;
    std::string label = "[" + format_tactic(a) + " | " + format_tactic(b) + "]";

    SurvivalCurve curve = survival_curve(a, b, limits);
    Rat w(0);
    for (const Rat& v : curve.values) w += v;
    Rat p0 = curve.values.back();

    if (with_enum) {
        EnumStats st = enumerate_pair(a, b, limits);
        SurvivalCurve ecurve = survival_from_enum(st);
        bool mismatch = waiting_time_from_enum(st) != w || prob_no_rendezvous_from_enum(st) != p0;
        for (size_t k = 0; !mismatch && k < curve.values.size(); ++k)
            mismatch = ecurve.values[k] != curve.values[k];
        if (mismatch) {
            ++stat.engine_mismatches;
            stat.note_failure("engine mismatch " + label);
        }
    }

    Rat floor_margin = w - Rat(a.n + 1) / 2;
    if (!stat.any_margin || floor_margin < stat.min_floor_margin) {
        stat.min_floor_margin = floor_margin;
        stat.any_margin = true;
    }
    if (floor_margin < 0) {
        ++stat.floor_violations;
        stat.note_failure("floor violation " + label + " w=" + fraction_str(w));
    }

    PairSet f = pair_set(a, b);
    MomentReport mom = moments_of_cells(f.cells, f.n, limits);
    if (mom.mean != Rat(Int(static_cast<long>(f.m()))) / Rat(Int(f.n)) || mom.fourth_moment > 15 ||
        mom.fourth_central > 16) {
        ++stat.moment_violations;
        stat.note_failure("moment cap violation " + label);
    }

    if (cfg.check_lemmas) {
        const BoundReport reports[] = {
            verify_pb_waiting(a, b, limits),
            verify_var_pb(a, b, cfg.var_pb_alpha, limits),
            verify_dp_var(a, b, limits),
            markov_corner_case(a, b, limits),
        };
        for (const BoundReport& rep : reports) {
            if (!rep.pass) {
                ++stat.lemma_failures;
                stat.note_failure(rep.name + " failed " + label + " margin=" +
                                  decimal_str(rep.margin, 6));
            }
        }
    }
}

}  // namespace

PairScanSummary run_pair_scan(const PairScanConfig& cfg, const ExactLimits& limits) {
    bool with_enum = cfg.compare_engines && cfg.n <= limits.max_enum_n;

    std::vector<Tactic> tactics;
    long long total;
    if (cfg.exhaustive) {
        tactics = all_tactics(cfg.n);
        total = (long long)tactics.size() * (long long)tactics.size();
    } else {
        total = std::max<long long>(cfg.samples, 1);
    }

    long long chunks = (total + kChunk - 1) / kChunk;
    std::vector<ChunkStat> slots(static_cast<size_t>(chunks));

    parallel_for(chunks, cfg.workers, [&](long long c) {
        ChunkStat stat;
        long long hi = std::min(total, (c + 1) * kChunk);
        for (long long i = c * kChunk; i < hi; ++i) {
            if (cfg.exhaustive) {
                long long count = (long long)tactics.size();
                const Tactic& a = tactics[size_t(i / count)];
                const Tactic& b = tactics[size_t(i % count)];
                scan_pair(a, b, cfg, limits, with_enum, stat);
            } else {
                RngStream rng = substream(cfg.seed, uint64_t(i));
                Tactic a = random_tactic(cfg.n, rng);
                Tactic b = random_tactic(cfg.n, rng);
                scan_pair(a, b, cfg, limits, with_enum, stat);
            }
        }
        slots[size_t(c)] = std::move(stat);
    });

    PairScanSummary summary;
    summary.engines_compared = with_enum;
    bool any = false;
    for (const ChunkStat& stat : slots) {
        summary.pairs += stat.pairs;
        summary.engine_mismatches += stat.engine_mismatches;
        summary.floor_violations += stat.floor_violations;
        summary.moment_violations += stat.moment_violations;
        summary.lemma_failures += stat.lemma_failures;
        if (stat.any_margin && (!any || stat.min_floor_margin < summary.min_floor_margin)) {
            summary.min_floor_margin = stat.min_floor_margin;
            any = true;
        }
        for (const std::string& f : stat.failures)
            if (summary.failures.size() < kMaxFailures) summary.failures.push_back(f);
    }
    return summary;
}

}  // namespace rdv
