#include "rdv/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

namespace rdv {

const ExactLimits& default_limits() {
    static const ExactLimits limits;
    return limits;
}

namespace {

// Backtracking state for rook_vector. Rows and columns are compacted to
// indices < 32 so occupancy fits in a pair of bitmasks.
struct RookWalker {
    std::vector<int> row, col;
    std::vector<long long> r;
    int cap = 0;
    uint32_t row_mask = 0, col_mask = 0;

    void extend(size_t from, int size) {
        for (size_t i = from; i < row.size(); ++i) {
            uint32_t rb = uint32_t(1) << row[i];
            uint32_t cb = uint32_t(1) << col[i];
            if ((row_mask & rb) || (col_mask & cb)) continue;
            ++r[size_t(size) + 1];
            if (size + 1 < cap) {
                row_mask |= rb;
                col_mask |= cb;
                extend(i + 1, size + 1);
                row_mask &= ~rb;
                col_mask &= ~cb;
            }
        }
    }
};

int compact(std::vector<int>& ids, int v) {
    auto it = std::find(ids.begin(), ids.end(), v);
    if (it != ids.end()) return int(it - ids.begin());
    ids.push_back(v);
    return int(ids.size()) - 1;
}

std::vector<Cell> dedup_cells(const std::vector<Cell>& cells) {
    std::vector<Cell> out(cells);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check_cell_cap(size_t m, const ExactLimits& limits) {
    if (m > size_t(limits.max_cells))
        throw CapExceeded("cell set of size " + std::to_string(m) +
                          " exceeds the exact-mode cap of " + std::to_string(limits.max_cells));
}

// mpz has no long long constructor; long is 64-bit on every platform we build.
Int big(long long v) { return Int(static_cast<long>(v)); }

Rat total_rat(const EnumStats& st) { return Rat(big(st.total)); }

}  // namespace

std::vector<long long> rook_vector(const std::vector<Cell>& cells, int max_size) {
    std::vector<Cell> uniq = dedup_cells(cells);
    if (uniq.size() > 32)
        throw CapExceeded("rook_vector limited to 32 distinct cells, got " +
                          std::to_string(uniq.size()));
    int m = int(uniq.size());
    int cap = (max_size < 0 || max_size > m) ? m : max_size;

    RookWalker walker;
    walker.r.assign(size_t(cap) + 1, 0);
    walker.r[0] = 1;
    walker.cap = cap;
    std::vector<int> row_ids, col_ids;
    for (const Cell& c : uniq) {
        walker.row.push_back(compact(row_ids, c.a));
        walker.col.push_back(compact(col_ids, c.b));
    }
    if (cap > 0) walker.extend(0, 0);
    return walker.r;
}

Int count_avoiding_permutations(const std::vector<Cell>& cells, int n,
                                const ExactLimits& limits) {
    std::vector<Cell> uniq = dedup_cells(cells);
    check_cell_cap(uniq.size(), limits);
    std::vector<long long> r = rook_vector(uniq);
    Int total = 0;
    for (size_t j = 0; j < r.size(); ++j) {
        if (r[j] == 0) continue;
        Int term = big(r[j]) * factorial(n - int(j));
        if (j % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

SurvivalCurve survival_curve(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    if (a.n != b.n) throw std::invalid_argument("tactics live on different location counts");
    int n = a.n;
    SurvivalCurve curve;
    curve.n = n;
    curve.values.reserve(size_t(n) + 1);
    const Int& total = factorial(n);

    std::set<Cell> seen;
    std::vector<Cell> prefix;
    curve.values.push_back(Rat(1));
    for (int k = 1; k <= n; ++k) {
        Cell c{a.itinerary[size_t(k) - 1], b.itinerary[size_t(k) - 1]};
        if (seen.insert(c).second) prefix.push_back(c);
        check_cell_cap(prefix.size(), limits);
        curve.values.push_back(Rat(count_avoiding_permutations(prefix, n, limits)) / Rat(total));
    }
    return curve;
}

Rat expected_waiting_time(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    SurvivalCurve curve = survival_curve(a, b, limits);
    Rat w(0);
    for (const Rat& v : curve.values) w += v;
    return w;
}

Rat prob_no_rendezvous(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    SurvivalCurve curve = survival_curve(a, b, limits);
    return curve.values.back();
}

MomentReport moments_of_cells(const std::vector<Cell>& cells, int n, const ExactLimits& limits) {
    std::vector<Cell> uniq = dedup_cells(cells);
    check_cell_cap(uniq.size(), limits);
    std::vector<long long> r = rook_vector(uniq, 4);

    // Factorial moments E[(X)_j] = r_j * j! * (n-j)!/n!, then ordinary
    // moments via Stirling numbers of the second kind.
    Rat fm[5];
    for (int j = 0; j <= 4; ++j) {
        long long rj = (size_t(j) < r.size()) ? r[size_t(j)] : 0;
        fm[j] = (rj == 0) ? Rat(0)
                          : Rat(big(rj) * factorial(j) * factorial(n - j)) / Rat(factorial(n));
    }
    Rat ex = fm[1];
    Rat ex2 = fm[2] + fm[1];
    Rat ex3 = fm[3] + 3 * fm[2] + fm[1];
    Rat ex4 = fm[4] + 6 * fm[3] + 7 * fm[2] + fm[1];

    MomentReport rep;
    rep.m = (long long)uniq.size();
    rep.mean = ex;
    rep.variance = ex2 - ex * ex;
    rep.fourth_moment = ex4;
    rep.fourth_central = ex4 - 4 * ex * ex3 + 6 * ex * ex * ex2 - 3 * ex * ex * ex * ex;
    return rep;
}

MomentReport moments(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    PairSet f = pair_set(a, b);
    return moments_of_cells(f.cells, f.n, limits);
}

Rat pairwise_product_expectation(const Cell& e, const Cell& f, int n) {
    if (e == f) throw std::invalid_argument("pairwise_product_expectation needs distinct cells");
    if (!cells_disjoint(e, f)) return Rat(0);
    return Rat(1) / Rat(Int(n) * Int(n - 1));
}

Rat product_expectation(const std::vector<Cell>& subset, int n, const ExactLimits& limits) {
    std::vector<Cell> uniq = dedup_cells(subset);
    if (uniq.size() > 12)
        throw CapExceeded("product_expectation limited to 12 distinct cells, got " +
                          std::to_string(uniq.size()));
    size_t k = uniq.size();
    const Int& total = factorial(n);
    Rat sum(0);
    std::vector<Cell> chosen;
    for (uint32_t mask = 0; mask < (uint32_t(1) << k); ++mask) {
        chosen.clear();
        for (size_t i = 0; i < k; ++i)
            if (mask & (uint32_t(1) << i)) chosen.push_back(uniq[i]);
        Rat term = Rat(count_avoiding_permutations(chosen, n, limits)) / Rat(total);
        if (chosen.size() % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

long long disjoint_pair_count(const PairSet& f) {
    long long count = 0;
    for (size_t i = 0; i < f.cells.size(); ++i)
        for (size_t j = i + 1; j < f.cells.size(); ++j)
            if (cells_disjoint(f.cells[i], f.cells[j])) ++count;
    return count;
}

EnumStats enumerate_pair(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    if (a.n != b.n) throw std::invalid_argument("tactics live on different location counts");
    int n = a.n;
    if (n > limits.max_enum_n)
        throw CapExceeded("full enumeration capped at n = " + std::to_string(limits.max_enum_n) +
                          ", got n = " + std::to_string(n));

    PairSet f = pair_set(a, b);
    EnumStats st;
    st.n = n;
    st.z_hist.assign(size_t(n) + 2, 0);
    st.x_hist.assign(f.cells.size() + 1, 0);

    // Flatten tactic lookups to 0-based indices for the hot loop.
    std::vector<int> a_idx(static_cast<size_t>(n));
    std::vector<int> b_val(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        a_idx[size_t(i)] = a.itinerary[size_t(i)] - 1;
        b_val[size_t(i)] = b.itinerary[size_t(i)];
    }
    std::vector<int> cell_row, cell_col;
    for (const Cell& c : f.cells) {
        cell_row.push_back(c.a - 1);
        cell_col.push_back(c.b);
    }

    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        int z = n + 1;
        for (int i = 0; i < n; ++i) {
            if (perm[size_t(a_idx[size_t(i)])] == b_val[size_t(i)]) {
                z = i + 1;
                break;
            }
        }
        int x = 0;
        for (size_t c = 0; c < cell_row.size(); ++c)
            if (perm[size_t(cell_row[c])] == cell_col[c]) ++x;
        ++st.z_hist[size_t(z)];
        ++st.x_hist[size_t(x)];
        ++st.total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return st;
}

SurvivalCurve survival_from_enum(const EnumStats& st) {
    SurvivalCurve curve;
    curve.n = st.n;
    for (int k = 0; k <= st.n; ++k) {
        long long above = 0;
        for (size_t z = size_t(k) + 1; z < st.z_hist.size(); ++z) above += st.z_hist[z];
        curve.values.push_back(Rat(big(above)) / total_rat(st));
    }
    return curve;
}

Rat waiting_time_from_enum(const EnumStats& st) {
    Int sum = 0;
    for (size_t z = 1; z < st.z_hist.size(); ++z) sum += big(st.z_hist[z]) * big((long long)z);
    return Rat(sum) / total_rat(st);
}

Rat prob_no_rendezvous_from_enum(const EnumStats& st) {
    return Rat(big(st.z_hist.back())) / total_rat(st);
}

MomentReport moments_from_enum(const EnumStats& st) {
    Int s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (size_t x = 0; x < st.x_hist.size(); ++x) {
        Int cnt = big(st.x_hist[x]);
        Int xv = big((long long)x);
        s1 += cnt * xv;
        s2 += cnt * xv * xv;
        s3 += cnt * xv * xv * xv;
        s4 += cnt * xv * xv * xv * xv;
    }
    Rat total = total_rat(st);
    MomentReport rep;
    rep.m = (long long)st.x_hist.size() - 1;
    rep.mean = Rat(s1) / total;
    Rat ex2 = Rat(s2) / total;
    Rat ex3 = Rat(s3) / total;
    rep.fourth_moment = Rat(s4) / total;
    rep.variance = ex2 - rep.mean * rep.mean;
    rep.fourth_central = rep.fourth_moment - 4 * rep.mean * ex3 + 6 * rep.mean * rep.mean * ex2 -
                         3 * rep.mean * rep.mean * rep.mean * rep.mean;
    return rep;
}

const Rat& WCache::w(const Tactic& a, const Tactic& b, const ExactLimits& limits) {
    auto key = std::make_pair(a.itinerary, b.itinerary);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Rat value = expected_waiting_time(a, b, limits);
    return memo.emplace(std::move(key), std::move(value)).first->second;
}

Rat phi_weighted(const std::vector<StrategyEntry>& xs, const std::vector<StrategyEntry>& ys,
                 WCache& cache, const ExactLimits& limits) {
    Rat sum(0);
    for (const StrategyEntry& x : xs) {
        if (x.weight == 0) continue;
        for (const StrategyEntry& y : ys) {
            if (y.weight == 0) continue;
            sum += x.weight * y.weight * cache.w(x.tactic, y.tactic, limits);
        }
    }
    return sum;
}

Rat bilinear_phi(const Strategy& a, const Strategy& b, WCache* cache, const ExactLimits& limits) {
    if (!a.has_table() || !b.has_table())
        throw SamplerOnlyError("Phi needs explicit support tables on both strategies");
    if (a.n != b.n) throw std::invalid_argument("strategies live on different location counts");
    WCache local;
    return phi_weighted(a.support, b.support, cache ? *cache : local, limits);
}

}  // namespace rdv
