#include "rdv/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rdv/parallel.hpp"

namespace rdv {

namespace {

struct Check {
    std::string label;
    Rat lhs, rhs;  // statement: lhs >= rhs

    Rat margin() const { return lhs - rhs; }
};

Check equality_check(const std::string& label, const Rat& x, const Rat& y) {
    Rat diff = x - y;
    if (diff < 0) diff = -diff;
    return {label, -diff, Rat(0)};
}

// Report the worst check; context lists every margin after the caller's
// prefix so no check is hidden by the summary.
BoundReport worst_of(const std::string& name, bool hypotheses_hold,
                     const std::vector<Check>& checks, const std::string& prefix) {
    BoundReport rep;
    rep.name = name;
    rep.hypotheses_hold = hypotheses_hold;

    size_t worst = 0;
    for (size_t i = 1; i < checks.size(); ++i)
        if (checks[i].margin() < checks[worst].margin()) worst = i;
    rep.lhs = checks[worst].lhs;
    rep.rhs = checks[worst].rhs;
    rep.margin = rep.lhs - rep.rhs;
    rep.pass = !hypotheses_hold || rep.margin >= 0;

    std::string ctx = prefix;
    for (const Check& c : checks) {
        if (!ctx.empty()) ctx += "; ";
        ctx += c.label + " margin=" + decimal_str(c.margin(), 6);
    }
    rep.context = ctx;
    return rep;
}

long long binomial(long long m, long long k) {
    if (k < 0 || k > m) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
}

// Visits every k-combination of [0..m) in lexicographic order, calling fn on
// every stride-th one. stride=1 visits all.
template <typename Fn>
void strided_combinations(int m, int k, long long stride, Fn&& fn) {
    if (k > m) return;
    std::vector<int> idx(static_cast<size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    long long counter = 0;
    while (true) {
        if (counter % stride == 0) fn(idx);
        ++counter;
        int i = k - 1;
        while (i >= 0 && idx[size_t(i)] == m - k + i) --i;
        if (i < 0) break;
        ++idx[size_t(i)];
        for (int j = i + 1; j < k; ++j) idx[size_t(j)] = idx[size_t(j) - 1] + 1;
    }
}

std::string pair_label(const Tactic& a, const Tactic& b) {
    return "[" + format_tactic(a) + " | " + format_tactic(b) + "]";
}

}  // namespace

BoundReport verify_pb_waiting(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    SurvivalCurve curve = survival_curve(a, b, limits);
    Rat w(0);
    for (const Rat& v : curve.values) w += v;
    Rat beta = curve.values.back();
    int n = a.n;

    BoundReport rep;
    rep.name = "pb-waiting";
    rep.hypotheses_hold = true;
    rep.lhs = w;
    rep.rhs = Rat(n + 1) / 2 + beta * beta * Rat(n) / 2;
    rep.margin = rep.lhs - rep.rhs;
    rep.pass = rep.margin >= 0;
    rep.context = "n=" + std::to_string(n) + " beta=" + fraction_str(beta) + " w=" +
                  fraction_str(w) + " " + pair_label(a, b);
    return rep;
}

BoundReport verify_moment_claims(const Tactic& a, const Tactic& b, long long tuple_budget,
                                 const ExactLimits& limits) {
    PairSet f = pair_set(a, b);
    int n = f.n;
    int m = int(f.cells.size());
    MomentReport mom = moments_of_cells(f.cells, n, limits);

    std::vector<Check> checks;
    checks.push_back(equality_check("EX=m/n", mom.mean, Rat(Int(m)) / Rat(Int(n))));
    checks.push_back({"EX4<=15", Rat(15), mom.fourth_moment});
    checks.push_back({"central4<=16", Rat(16), mom.fourth_central});

    // Product-expectation caps 1/(n)_k per arity, recomputed through the
    // independent inclusion-exclusion route; only the worst subset per arity
    // is kept.
    for (int k = 2; k <= 4; ++k) {
        if (m < k) continue;
        Rat cap = Rat(1) / Rat(falling(n, k));
        long long combos = binomial(m, k);
        long long stride = std::max<long long>(1, (combos + tuple_budget - 1) / tuple_budget);
        bool have = false;
        Rat worst_value;
        std::vector<Cell> subset(static_cast<size_t>(k));
        strided_combinations(m, k, stride, [&](const std::vector<int>& idx) {
            for (int i = 0; i < k; ++i) subset[size_t(i)] = f.cells[size_t(idx[size_t(i)])];
            Rat value = product_expectation(subset, n, limits);
            if (!have || value > worst_value) {
                worst_value = value;
                have = true;
            }
        });
        if (have)
            checks.push_back({"tuples" + std::to_string(k) + "<=1/falling", cap, worst_value});
    }

    return worst_of("moment-claims", true, checks,
                    "n=" + std::to_string(n) + " m=" + std::to_string(m) + " " + pair_label(a, b));
}

Rat paley_zygmund_bound(const Rat& ez, const Rat& ez2, const Rat& lambda) {
    if (lambda < 0 || lambda > 1)
        throw std::invalid_argument("lambda must lie in [0,1], got " + fraction_str(lambda));
    if (ez2 == 0) throw std::invalid_argument("paley_zygmund_bound needs E Z^2 > 0");
    Rat one_minus = Rat(1) - lambda;
    return one_minus * one_minus * ez * ez / ez2;
}

BoundReport verify_var_pb(const Tactic& a, const Tactic& b, const Rat& alpha,
                          const ExactLimits& limits) {
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    PairSet f = pair_set(a, b);
    int n = f.n;
    long long m = f.m();
    MomentReport mom = moments_of_cells(f.cells, n, limits);

    // m >= (1 - sqrt(alpha/2)) n, compared squared to stay rational.
    Rat slack = Rat(1) - Rat(Int(static_cast<long>(m))) / Rat(Int(n));
    bool m_large_enough = slack <= 0 || slack * slack <= alpha / 2;
    bool var_large_enough = mom.variance >= alpha;
    bool hyp = m_large_enough && var_large_enough;

    BoundReport rep;
    rep.name = "var-pb";
    rep.hypotheses_hold = hyp;
    rep.lhs = Rat(count_avoiding_permutations(f.cells, n, limits)) / Rat(factorial(n));
    rep.rhs = alpha * alpha / 128;
    rep.margin = rep.lhs - rep.rhs;
    rep.pass = !hyp || rep.margin >= 0;
    rep.context = "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                  " var=" + fraction_str(mom.variance) + " alpha=" + fraction_str(alpha) +
                  " m_hyp=" + (m_large_enough ? "1" : "0") +
                  " var_hyp=" + (var_large_enough ? "1" : "0") + " " + pair_label(a, b);
    return rep;
}

BoundReport verify_dp_var(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    PairSet f = pair_set(a, b);
    int n = f.n;
    long long d = disjoint_pair_count(f);
    Rat alpha = Rat(Int(static_cast<long>(d))) / Rat(Int(n) * Int(n - 1) / 2);
    MomentReport mom = moments_of_cells(f.cells, n, limits);

    std::vector<Check> checks;
    checks.push_back({"VarX>=alpha", mom.variance, alpha});

    // Covariance identity per cell pair, with E X_e X_f recomputed through
    // inclusion-exclusion rather than the closed form.
    Rat inv_n2 = Rat(1) / Rat(Int(n) * Int(n));
    bool have = false;
    Rat worst_dev(0);
    std::vector<Cell> subset(2);
    for (size_t i = 0; i < f.cells.size(); ++i) {
        for (size_t j = i + 1; j < f.cells.size(); ++j) {
            subset[0] = f.cells[i];
            subset[1] = f.cells[j];
            Rat cov = product_expectation(subset, n, limits) - inv_n2;
            Rat claimed = pairwise_product_expectation(f.cells[i], f.cells[j], n) - inv_n2;
            Rat dev = cov - claimed;
            if (dev < 0) dev = -dev;
            if (!have || dev > worst_dev) {
                worst_dev = dev;
                have = true;
            }
        }
    }
    if (have) checks.push_back({"cov-identity", -worst_dev, Rat(0)});

    return worst_of("dp-var", true, checks,
                    "n=" + std::to_string(n) + " D=" + std::to_string(d) +
                        " alpha=" + fraction_str(alpha) + " " + pair_label(a, b));
}

BoundReport markov_corner_case(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    PairSet f = pair_set(a, b);
    int n = f.n;
    long long m = f.m();
    bool hyp = 12 * m <= 11 * n;

    BoundReport rep;
    rep.name = "markov-corner";
    rep.hypotheses_hold = hyp;
    rep.lhs = Rat(count_avoiding_permutations(f.cells, n, limits)) / Rat(factorial(n));
    rep.rhs = Rat(1) / 12;
    rep.margin = rep.lhs - rep.rhs;
    rep.pass = !hyp || rep.margin >= 0;
    rep.context = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " " + pair_label(a, b);
    return rep;
}

namespace {

// Vertices ordered by degree descending, index ascending; prefix kept while
// its degree sum stays <= 2n/3. Returns (prefix membership, prefix degree
// sum); degree sums are monotone along the order, so the greedy prefix is
// the largest one.
std::pair<std::vector<bool>, long long> degree_prefix(const std::vector<long long>& deg, int n) {
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int u, int v) {
        if (deg[size_t(u)] != deg[size_t(v)]) return deg[size_t(u)] > deg[size_t(v)];
        return u < v;
    });

    std::vector<bool> in_prefix(size_t(n) + 1, false);
    long long sum = 0;
    for (int v : order) {
        if (3 * (sum + deg[size_t(v)]) > 2 * n) break;
        in_prefix[size_t(v)] = true;
        sum += deg[size_t(v)];
    }
    return {in_prefix, sum};
}

}  // namespace

BipartiteSplit split_disjoint_edges(const PairSet& graph) {
    int n = graph.n;
    long long e = (long long)graph.cells.size();
    if (12 * e < 11 * n || e > n)
        throw std::invalid_argument("edge count " + std::to_string(e) +
                                    " outside [11n/12, n] for n = " + std::to_string(n));

    std::vector<long long> deg_left(size_t(n) + 1, 0), deg_right(size_t(n) + 1, 0);
    for (const Cell& c : graph.cells) {
        if (c.a < 1 || c.a > n || c.b < 1 || c.b > n)
            throw std::invalid_argument("edge endpoint outside [1..n]");
        ++deg_left[size_t(c.a)];
        ++deg_right[size_t(c.b)];
    }
    for (int v = 1; v <= n; ++v)
        if (3 * deg_left[size_t(v)] > 2 * n || 3 * deg_right[size_t(v)] > 2 * n)
            throw std::invalid_argument("vertex degree above 2n/3 for n = " + std::to_string(n));

    auto [in_a1, deg_a1] = degree_prefix(deg_left, n);
    auto [in_b1, deg_b1] = degree_prefix(deg_right, n);
    long long deg_a2 = e - deg_a1;
    long long deg_b2 = e - deg_b1;

    // Internal bounds of the construction; a failure here falsifies the
    // statement being verified, hence InvariantViolation.
    if (3 * deg_a1 <= n || 3 * deg_b1 <= n)
        throw InvariantViolation("prefix degree sum not above n/3");
    if (4 * deg_a2 < n || 4 * deg_b2 < n) throw InvariantViolation("suffix degree sum below n/4");

    std::vector<Cell> f11, f12, f21, f22;
    for (const Cell& c : graph.cells) {
        bool a1 = in_a1[size_t(c.a)];
        bool b1 = in_b1[size_t(c.b)];
        (a1 ? (b1 ? f11 : f12) : (b1 ? f21 : f22)).push_back(c);
    }

    BipartiteSplit split;
    split.deg_a1 = deg_a1;
    split.deg_a2 = deg_a2;
    split.deg_b1 = deg_b1;
    split.deg_b2 = deg_b2;
    for (int v = 1; v <= n; ++v) {
        (in_a1[size_t(v)] ? split.a1 : split.a2).push_back(v);
        (in_b1[size_t(v)] ? split.b1 : split.b2).push_back(v);
    }

    auto big = [n](const std::vector<Cell>& cls) { return 8 * (long long)cls.size() >= n; };
    if (big(f11) && big(f22)) {
        split.e1 = f11;
        split.e2 = f22;
    } else if (big(f12) && big(f21)) {
        split.e1 = f12;
        split.e2 = f21;
    } else {
        throw InvariantViolation("no cross class pair of size >= n/8");
    }
    return split;
}

PairSet random_split_graph(int n, RngStream& rng) {
    if (n < 12) throw std::invalid_argument("random_split_graph needs n >= 12");
    long long lo = (11 * (long long)n + 11) / 12;
    long long edges = lo + (long long)rng.below(uint64_t(n - lo + 1));
    long long cap = 2 * (long long)n / 3;

    std::set<Cell> chosen;
    std::vector<long long> deg_left(size_t(n) + 1, 0), deg_right(size_t(n) + 1, 0);
    uint64_t style = rng.below(3);

    if (style == 0) {
        // Flat profile: uniform cells under the degree caps.
        long long guard = 1000 * (long long)n * n;
        while ((long long)chosen.size() < edges) {
            if (--guard < 0) throw InvariantViolation("random_split_graph stalled");
            int a = int(rng.below(uint64_t(n))) + 1;
            int b = int(rng.below(uint64_t(n))) + 1;
            if (deg_left[size_t(a)] >= cap || deg_right[size_t(b)] >= cap) continue;
            if (!chosen.insert({a, b}).second) continue;
            ++deg_left[size_t(a)];
            ++deg_right[size_t(b)];
        }
    } else {
        // Skewed profile: consecutive hubs on one side filled to the cap,
        // partners drawn as a random distinct set on the other side.
        bool hubs_left = (style == 1);
        std::vector<int> partners(static_cast<size_t>(n));
        long long remaining = edges;
        int hub = 1;
        while (remaining > 0) {
            long long d = std::min(cap, remaining);
            std::iota(partners.begin(), partners.end(), 1);
            rng.partial_shuffle(partners, int(d));
            for (long long i = 0; i < d; ++i) {
                int other = partners[size_t(i)];
                chosen.insert(hubs_left ? Cell{hub, other} : Cell{other, hub});
            }
            remaining -= d;
            ++hub;
        }
    }

    PairSet graph;
    graph.n = n;
    graph.cells.assign(chosen.begin(), chosen.end());
    return graph;
}

namespace {

Tactic sample_tactic_of_kind(int n, TacticKind kind, RngStream& rng) {
    for (int tries = 0; tries < 1000000; ++tries) {
        Tactic t = random_tactic(n, rng);
        if (classify(t) == kind) return t;
    }
    throw InvariantViolation("could not sample a tactic of the requested kind");
}

struct GapSample {
    Rat gap, p0;
    Tactic a, b;
};

GapSample gap_of_pair(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    SurvivalCurve curve = survival_curve(a, b, limits);
    Rat w(0);
    for (const Rat& v : curve.values) w += v;
    return {w - Rat(a.n + 1) / 2, curve.values.back(), a, b};
}

}  // namespace

BoundReport verify_same_kind_gap(const GapScanConfig& cfg, const ExactLimits& limits) {
    int n = cfg.n;
    std::vector<GapSample> slots;
    long long passive_pairs = 0, active_pairs = 0;

    if (cfg.exhaustive) {
        if (n > 4)
            throw CapExceeded("exhaustive same-kind scan capped at n = 4, got n = " +
                              std::to_string(n));
        std::vector<Tactic> kinds[2];
        for (const Tactic& t : all_tactics(n))
            kinds[classify(t) == TacticKind::Passive ? 0 : 1].push_back(t);
        for (int k = 0; k < 2; ++k) {
            const std::vector<Tactic>& group = kinds[size_t(k)];
            long long count = 0;
            for (size_t i = 0; i < group.size(); ++i)
                for (size_t j = i; j < group.size(); ++j) {
                    slots.push_back(gap_of_pair(group[i], group[j], limits));
                    ++count;
                }
            (k == 0 ? passive_pairs : active_pairs) = count;
        }
    } else {
        long long samples = std::max<long long>(cfg.samples, 1);
        long long passive_budget = (samples + 1) / 2;
        slots.resize(size_t(samples));
        parallel_for(samples, cfg.workers, [&](long long i) {
            RngStream rng = substream(cfg.seed, uint64_t(i));
            TacticKind kind =
                i < passive_budget ? TacticKind::Passive : TacticKind::Active;
            Tactic a = sample_tactic_of_kind(n, kind, rng);
            Tactic b = sample_tactic_of_kind(n, kind, rng);
            slots[size_t(i)] = gap_of_pair(a, b, limits);
        });
        passive_pairs = passive_budget;
        active_pairs = samples - passive_budget;
    }

    size_t worst_gap = 0, worst_p0 = 0;
    for (size_t i = 1; i < slots.size(); ++i) {
        if (slots[i].gap < slots[worst_gap].gap) worst_gap = i;
        if (slots[i].p0 < slots[worst_p0].p0) worst_p0 = i;
    }
    const GapSample& g = slots[worst_gap];
    const GapSample& q = slots[worst_p0];

    std::vector<Check> checks;
    checks.push_back({"gap>=2^-35*n", g.gap, pow2(-35) * Rat(Int(n))});
    checks.push_back({"p0>=2^-17", q.p0, pow2(-17)});

    std::string prefix = "n=" + std::to_string(n) +
                         (cfg.exhaustive ? " exhaustive"
                                         : " sampled seed=" + std::to_string(cfg.seed)) +
                         " pairs=" + std::to_string(slots.size()) +
                         " (passive " + std::to_string(passive_pairs) + ", active " +
                         std::to_string(active_pairs) + ")" +
                         " min_gap=" + decimal_str(g.gap, 6) + " at " + pair_label(g.a, g.b) +
                         " min_p0=" + decimal_str(q.p0, 6) + " at " + pair_label(q.a, q.b);
    return worst_of("same-kind-gap", true, checks, prefix);
}

BoundReport verify_theorem1_assembly(const Strategy& s, WCache* cache, const ExactLimits& limits) {
    if (!s.has_table()) throw SamplerOnlyError("theorem1 assembly needs a support table");
    int n = s.n;

    std::vector<StrategyEntry> passive, active;
    Rat p(0);
    for (const StrategyEntry& entry : s.support) {
        if (classify(entry.tactic) == TacticKind::Passive) {
            passive.push_back(entry);
            p += entry.weight;
        } else {
            active.push_back(entry);
        }
    }

    WCache local;
    WCache& wc = cache ? *cache : local;
    Rat phi_pp = phi_weighted(passive, passive, wc, limits);
    Rat phi_aa = phi_weighted(active, active, wc, limits);
    Rat phi_pa = phi_weighted(passive, active, wc, limits);
    Rat phi_all = phi_weighted(s.support, s.support, wc, limits);

    Rat half = Rat(n + 1) / 2;
    Rat delta = pow2(-35);
    Rat eps = pow2(-36);
    Rat q = Rat(1) - p;

    std::vector<Check> checks;
    checks.push_back(equality_check("decomposition", phi_all, phi_pp + phi_aa + 2 * phi_pa));
    checks.push_back({"female-squirrel", phi_pp, p * p * (half + delta * Rat(Int(n)))});
    checks.push_back({"male-squirrel", phi_aa, q * q * (half + delta * Rat(Int(n)))});
    checks.push_back({"platypus", phi_pa, p * q * half});
    checks.push_back({"total-floor", phi_all, half + eps * Rat(Int(n))});

    return worst_of("theorem1-assembly", true, checks,
                    "n=" + std::to_string(n) + " support=" + std::to_string(s.support.size()) +
                        " p=" + fraction_str(p) + " phi=" + fraction_str(phi_all));
}

}  // namespace rdv
