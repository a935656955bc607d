#include "rdv/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdv/bounds.hpp"
#include "rdv/exact.hpp"
#include "rdv/montecarlo.hpp"
#include "rdv/optimizer.hpp"
#include "rdv/parallel.hpp"
#include "rdv/rational.hpp"
#include "rdv/rng.hpp"
#include "rdv/scan.hpp"
#include "rdv/strategy.hpp"
#include "rdv/tactic.hpp"
#include "rdv/zoo.hpp"

namespace rdv {
namespace {

using Json = nlohmann::ordered_json;

void put_rat(Json& j, const std::string& key, const Rat& v) {
    j[key] = fraction_str(v);
    j[key + "_decimal"] = decimal_str(v);
}

std::string rat_line(const Rat& v) { return fraction_str(v) + " (" + decimal_str(v) + ")"; }

std::string fl(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<uint64_t>(rd()) << 32) ^ rd();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int emit(const std::string& payload, const std::string& path, std::ostream& out,
         std::ostream& err) {
    if (path.empty()) {
        out << payload;
        return 0;
    }
    std::ofstream f(path);
    if (!f) {
        err << "cannot open output file: " << path << "\n";
        return 2;
    }
    f << payload;
    return 0;
}

// Strategy mini-language shared by phi, simulate, and verify theorem1:
//   wfm-baby | wfm-mommy | uniform | aw:<theta>[:multiblock]
//   | tactic:<i1 i2 ... in> | file:<path>
// Multi-block strategies take their block count from `horizon`.
Strategy resolve_strategy(const std::string& spec, int n, int horizon) {
    if (spec == "wfm-baby") return wait_for_mommy_pair(n).first;
    if (spec == "wfm-mommy") return wait_for_mommy_pair(n).second;
    if (spec == "uniform") return uniform_random_strategy(n);
    if (spec.rfind("aw:", 0) == 0) {
        std::string rest = spec.substr(3);
        std::string theta_part = rest;
        BlockMode mode = BlockMode::TruncatedSingleGame;
        if (auto colon = rest.find(':'); colon != std::string::npos) {
            theta_part = rest.substr(0, colon);
            std::string mode_part = rest.substr(colon + 1);
            if (mode_part == "multiblock") {
                mode = BlockMode::MultiBlock;
            } else if (mode_part != "truncated") {
                throw std::invalid_argument("unknown aw mode: " + mode_part +
                                            " (want truncated or multiblock)");
            }
        }
        AWConfig cfg;
        cfg.n = n;
        cfg.theta = parse_rat(theta_part);
        cfg.mode = mode;
        cfg.horizon = horizon;
        return anderson_weber(cfg);
    }
    if (spec.rfind("tactic:", 0) == 0) return point_mass(parse_tactic(n, spec.substr(7)));
    if (spec.rfind("file:", 0) == 0) {
        Strategy s = load_strategy(spec.substr(5));
        if (s.n != n) {
            throw std::invalid_argument("strategy file has n=" + std::to_string(s.n) +
                                        ", expected n=" + std::to_string(n));
        }
        return s;
    }
    throw std::invalid_argument(
        "unknown strategy spec: " + spec +
        " (want wfm-baby, wfm-mommy, uniform, aw:<theta>[:multiblock], "
        "tactic:<i1 i2 ...>, or file:<path>)");
}

Json report_json(const BoundReport& r) {
    Json j;
    j["name"] = r.name;
    j["hypotheses_hold"] = r.hypotheses_hold;
    put_rat(j, "lhs", r.lhs);
    put_rat(j, "rhs", r.rhs);
    put_rat(j, "margin", r.margin);
    j["pass"] = r.pass;
    j["context"] = r.context;
    return j;
}

std::string report_text(const BoundReport& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << ' ' << r.name;
    if (!r.hypotheses_hold) os << " (hypotheses not satisfied; claim is vacuous)";
    os << "\n  lhs = " << rat_line(r.lhs) << "\n  rhs = " << rat_line(r.rhs)
       << "\n  margin = " << rat_line(r.margin) << "\n  " << r.context << "\n";
    return os.str();
}

using PairVerifier = std::function<BoundReport(const Tactic&, const Tactic&)>;

PairVerifier make_pair_verifier(const std::string& lemma, const Rat& alpha,
                                long long tuple_budget) {
    if (lemma == "pb-waiting") {
        return [](const Tactic& a, const Tactic& b) { return verify_pb_waiting(a, b); };
    }
    if (lemma == "moment-claims") {
        return [tuple_budget](const Tactic& a, const Tactic& b) {
            return verify_moment_claims(a, b, tuple_budget);
        };
    }
    if (lemma == "var-pb") {
        return [alpha](const Tactic& a, const Tactic& b) { return verify_var_pb(a, b, alpha); };
    }
    if (lemma == "dp-var") {
        return [](const Tactic& a, const Tactic& b) { return verify_dp_var(a, b); };
    }
    return [](const Tactic& a, const Tactic& b) { return markov_corner_case(a, b); };
}

// Runs a per-pair verifier over every ordered pair (n <= 4) or over seeded
// samples, and condenses the outcome into one report: the worst margin seen,
// failing reports first, hypothesis-holding ones before vacuous ones.
BoundReport sweep_pairs(const std::string& name, int n, bool exhaustive, long long samples,
                        uint64_t seed, const PairVerifier& vf) {
    long long pairs = 0;
    long long failures = 0;
    long long effective = 0;
    bool have = false;
    bool worst_fail = false;
    BoundReport worst;
    std::string worst_label;

    auto note = [&](const BoundReport& r, const Tactic& a, const Tactic& b) {
        ++pairs;
        if (r.hypotheses_hold) ++effective;
        bool fail = !r.pass;
        if (fail) ++failures;
        bool take;
        if (!have) {
            take = true;
        } else if (fail != worst_fail) {
            take = fail;
        } else if (r.hypotheses_hold != worst.hypotheses_hold) {
            take = r.hypotheses_hold;
        } else {
            take = r.margin < worst.margin;
        }
        if (take) {
            worst = r;
            worst_fail = fail;
            have = true;
            worst_label = "[" + format_tactic(a) + " | " + format_tactic(b) + "]";
        }
    };

    if (exhaustive) {
        if (n > 4) throw CapExceeded("exhaustive sweep needs n <= 4; use --mode sampled");
        std::vector<Tactic> ts = all_tactics(n);
        for (const Tactic& a : ts) {
            for (const Tactic& b : ts) note(vf(a, b), a, b);
        }
    } else {
        for (long long i = 0; i < samples; ++i) {
            RngStream rng = substream(seed, static_cast<uint64_t>(i));
            Tactic a = random_tactic(n, rng);
            Tactic b = random_tactic(n, rng);
            note(vf(a, b), a, b);
        }
    }

    BoundReport out = worst;
    out.name = name;
    out.pass = failures == 0;
    std::ostringstream ctx;
    ctx << (exhaustive ? "exhaustive" : "sampled") << " sweep, n=" << n << ", pairs=" << pairs
        << ", hypotheses_held=" << effective << ", failures=" << failures;
    if (!exhaustive) ctx << ", seed=" << seed;
    ctx << "; worst pair " << worst_label << "; " << worst.context;
    out.context = ctx.str();
    return out;
}

// Seeded random graphs pushed through the edge-splitting construction; the
// report tracks the smallest part over all graphs against the n/8 floor.
// Any InvariantViolation is a falsification and fails the report.
BoundReport split_sweep(int n, long long graphs, uint64_t seed) {
    long long done = 0;
    long long worst = -1;
    std::string worst_label = "none";
    std::string violation;

    for (long long g = 0; g < graphs; ++g) {
        RngStream rng = substream(seed, static_cast<uint64_t>(g));
        PairSet graph = random_split_graph(n, rng);
        BipartiteSplit sp;
        try {
            sp = split_disjoint_edges(graph);
        } catch (const InvariantViolation& e) {
            violation = "graph " + std::to_string(g) + ": " + e.what();
            break;
        }
        std::set<int> rows;
        std::set<int> cols;
        for (const Cell& e : sp.e1) {
            rows.insert(e.a);
            cols.insert(e.b);
        }
        for (const Cell& e : sp.e2) {
            if (rows.count(e.a) || cols.count(e.b)) {
                violation = "graph " + std::to_string(g) + ": edge parts share a vertex";
                break;
            }
        }
        if (!violation.empty()) break;
        long long small =
            std::min(static_cast<long long>(sp.e1.size()), static_cast<long long>(sp.e2.size()));
        if (worst < 0 || small < worst) {
            worst = small;
            worst_label = "graph " + std::to_string(g) + " (m=" + std::to_string(graph.m()) + ")";
        }
        ++done;
    }

    BoundReport r;
    r.name = "split";
    r.lhs = Rat(static_cast<long>(std::max<long long>(worst, 0)));
    r.rhs = Rat(n) / 8;
    r.margin = r.lhs - r.rhs;
    r.pass = violation.empty() && done == graphs && r.margin >= 0;
    std::ostringstream ctx;
    ctx << "graphs=" << done << "/" << graphs << ", n=" << n << ", seed=" << seed
        << ", smallest part at " << worst_label;
    if (!violation.empty()) ctx << "; VIOLATION: " << violation;
    r.context = ctx.str();
    return r;
}

Json pair_eval_json(int n, const Tactic& a, const Tactic& b, const SurvivalCurve& sc,
                    const Rat& w, const Rat& p0) {
    Json j;
    j["n"] = n;
    j["tactic_a"] = format_tactic(a);
    j["tactic_b"] = format_tactic(b);
    put_rat(j, "w", w);
    Json sv = Json::array();
    Json sd = Json::array();
    for (const Rat& v : sc.values) {
        sv.push_back(fraction_str(v));
        sd.push_back(decimal_str(v));
    }
    j["survival"] = std::move(sv);
    j["survival_decimal"] = std::move(sd);
    put_rat(j, "p_no_meet", p0);
    return j;
}

struct PairOpts {
    int n = 0;
    std::string tactic_a;
    std::string tactic_b;
    std::string format = "text";
    std::string output;
};

int run_eval(const PairOpts& o, bool curve_listing, std::ostream& out, std::ostream& err) {
    Tactic a = parse_tactic(o.n, o.tactic_a);
    Tactic b = parse_tactic(o.n, o.tactic_b);
    SurvivalCurve sc = survival_curve(a, b);
    Rat w(0);
    for (const Rat& v : sc.values) w += v;
    const Rat& p0 = sc.values.back();

    if (o.format == "json") {
        return emit(dump(pair_eval_json(o.n, a, b, sc, w, p0)), o.output, out, err);
    }
    if (o.format == "csv") {
        std::ostringstream os;
        os << "k,survival,survival_decimal\n";
        for (size_t k = 0; k < sc.values.size(); ++k) {
            os << k << ',' << fraction_str(sc.values[k]) << ',' << decimal_str(sc.values[k])
               << '\n';
        }
        return emit(os.str(), o.output, out, err);
    }
    std::ostringstream os;
    os << "n = " << o.n << "\n"
       << "tactic_a = " << format_tactic(a) << "\n"
       << "tactic_b = " << format_tactic(b) << "\n";
    if (curve_listing) {
        for (size_t k = 0; k < sc.values.size(); ++k) {
            os << "P(Z > " << k << ") = " << rat_line(sc.values[k]) << "\n";
        }
    }
    os << "w = " << rat_line(w) << "\n"
       << "p_no_meet = " << rat_line(p0) << "\n";
    return emit(os.str(), o.output, out, err);
}

int run_moments(const PairOpts& o, std::ostream& out, std::ostream& err) {
    Tactic a = parse_tactic(o.n, o.tactic_a);
    Tactic b = parse_tactic(o.n, o.tactic_b);
    MomentReport mr = moments(a, b);

    if (o.format == "json") {
        Json j;
        j["n"] = o.n;
        j["tactic_a"] = format_tactic(a);
        j["tactic_b"] = format_tactic(b);
        j["m"] = mr.m;
        put_rat(j, "mean", mr.mean);
        put_rat(j, "variance", mr.variance);
        put_rat(j, "fourth_moment", mr.fourth_moment);
        put_rat(j, "fourth_central", mr.fourth_central);
        return emit(dump(j), o.output, out, err);
    }
    std::ostringstream os;
    os << "n = " << o.n << "\n"
       << "tactic_a = " << format_tactic(a) << "\n"
       << "tactic_b = " << format_tactic(b) << "\n"
       << "m = " << mr.m << "\n"
       << "mean = " << rat_line(mr.mean) << "\n"
       << "variance = " << rat_line(mr.variance) << "\n"
       << "fourth_moment = " << rat_line(mr.fourth_moment) << "\n"
       << "fourth_central = " << rat_line(mr.fourth_central) << "\n";
    return emit(os.str(), o.output, out, err);
}

struct PhiOpts {
    int n = 0;
    std::string strategy_a;
    std::string strategy_b;
    std::string export_a;
    std::string export_b;
    std::string format = "text";
    std::string output;
};

int run_phi(const PhiOpts& o, std::ostream& out, std::ostream& err) {
    Strategy a = resolve_strategy(o.strategy_a, o.n, 0);
    Strategy b = resolve_strategy(o.strategy_b, o.n, 0);
    WCache cache;
    Rat phi = bilinear_phi(a, b, &cache);
    if (!o.export_a.empty()) save_strategy(a, o.export_a);
    if (!o.export_b.empty()) save_strategy(b, o.export_b);

    if (o.format == "json") {
        Json j;
        j["n"] = o.n;
        j["strategy_a"] = o.strategy_a;
        j["strategy_b"] = o.strategy_b;
        j["support_a"] = a.support.size();
        j["support_b"] = b.support.size();
        put_rat(j, "phi", phi);
        return emit(dump(j), o.output, out, err);
    }
    std::ostringstream os;
    os << "n = " << o.n << "\n"
       << "strategy_a = " << o.strategy_a << " (support " << a.support.size() << ")\n"
       << "strategy_b = " << o.strategy_b << " (support " << b.support.size() << ")\n"
       << "phi = " << rat_line(phi) << "\n";
    return emit(os.str(), o.output, out, err);
}

struct VerifyOpts {
    std::string lemma;
    int n = 4;
    std::string tactic_a;
    std::string tactic_b;
    std::string mode = "exhaustive";
    long long samples = 10000;
    long long graphs = 1000;
    long long tuple_budget = 512;
    uint64_t seed = 0;
    bool seed_given = false;
    int workers = -1;
    std::string alpha = "1/32";
    std::string strategy;
    std::string format = "json";
    std::string output;
};

int run_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
    uint64_t seed = o.seed_given ? o.seed : fresh_seed();
    std::vector<BoundReport> reports;

    if (o.lemma == "same-kind-gap") {
        GapScanConfig cfg;
        cfg.n = o.n;
        cfg.exhaustive = o.mode == "exhaustive";
        cfg.samples = o.samples;
        cfg.seed = seed;
        cfg.workers = resolve_workers(o.workers);
        reports.push_back(verify_same_kind_gap(cfg));
    } else if (o.lemma == "theorem1") {
        if (o.strategy.empty()) {
            err << "verify theorem1 needs --strategy <spec>\n";
            return 2;
        }
        Strategy s = resolve_strategy(o.strategy, o.n, 0);
        reports.push_back(verify_theorem1_assembly(s));
    } else if (o.lemma == "split") {
        reports.push_back(split_sweep(o.n, o.graphs, seed));
    } else {
        PairVerifier vf = make_pair_verifier(o.lemma, parse_rat(o.alpha), o.tuple_budget);
        bool have_a = !o.tactic_a.empty();
        bool have_b = !o.tactic_b.empty();
        if (have_a != have_b) {
            err << "provide both --tactic-a and --tactic-b, or neither for a sweep\n";
            return 2;
        }
        if (have_a) {
            reports.push_back(vf(parse_tactic(o.n, o.tactic_a), parse_tactic(o.n, o.tactic_b)));
        } else if (o.mode == "exhaustive") {
            reports.push_back(sweep_pairs(o.lemma, o.n, true, 0, 0, vf));
        } else {
            reports.push_back(sweep_pairs(o.lemma, o.n, false, o.samples, seed, vf));
        }
    }

    bool all_pass = true;
    for (const BoundReport& r : reports) all_pass = all_pass && r.pass;

    std::string payload;
    if (o.format == "json") {
        Json arr = Json::array();
        for (const BoundReport& r : reports) arr.push_back(report_json(r));
        payload = dump(arr);
    } else {
        std::ostringstream os;
        for (const BoundReport& r : reports) os << report_text(r);
        payload = os.str();
    }
    int ec = emit(payload, o.output, out, err);
    if (ec != 0) return ec;
    return all_pass ? 0 : 1;
}

struct ScanOpts {
    int n = 4;
    std::string mode = "exhaustive";
    long long samples = 10000;
    uint64_t seed = 0;
    bool seed_given = false;
    int workers = -1;
    bool no_engine_compare = false;
    bool lemmas = false;
    std::string alpha = "1/32";
    std::string format = "text";
    std::string output;
};

int run_scan(const ScanOpts& o, std::ostream& out, std::ostream& err) {
    PairScanConfig cfg;
    cfg.n = o.n;
    cfg.exhaustive = o.mode == "exhaustive";
    cfg.samples = o.samples;
    uint64_t seed = o.seed_given ? o.seed : fresh_seed();
    cfg.seed = seed;
    cfg.workers = resolve_workers(o.workers);
    cfg.compare_engines = !o.no_engine_compare;
    cfg.check_lemmas = o.lemmas;
    cfg.var_pb_alpha = parse_rat(o.alpha);
    PairScanSummary s = run_pair_scan(cfg);

    std::string payload;
    if (o.format == "json") {
        Json j;
        j["n"] = o.n;
        j["mode"] = o.mode;
        if (!cfg.exhaustive) {
            j["samples"] = o.samples;
            j["seed"] = seed;
        }
        j["pairs"] = s.pairs;
        j["engines_compared"] = s.engines_compared;
        j["engine_mismatches"] = s.engine_mismatches;
        j["floor_violations"] = s.floor_violations;
        j["moment_violations"] = s.moment_violations;
        j["lemmas_checked"] = cfg.check_lemmas;
        j["lemma_failures"] = s.lemma_failures;
        put_rat(j, "min_floor_margin", s.min_floor_margin);
        j["clean"] = s.clean();
        Json fails = Json::array();
        for (const std::string& f : s.failures) fails.push_back(f);
        j["failures"] = std::move(fails);
        payload = dump(j);
    } else {
        std::ostringstream os;
        os << "n = " << o.n << "\n"
           << "mode = " << o.mode << "\n";
        if (!cfg.exhaustive) os << "samples = " << o.samples << "\nseed = " << seed << "\n";
        os << "pairs = " << s.pairs << "\n"
           << "engines_compared = " << (s.engines_compared ? "yes" : "no") << "\n"
           << "engine_mismatches = " << s.engine_mismatches << "\n"
           << "floor_violations = " << s.floor_violations << "\n"
           << "moment_violations = " << s.moment_violations << "\n"
           << "lemma_failures = " << s.lemma_failures
           << (cfg.check_lemmas ? "" : " (lemmas not checked)") << "\n"
           << "min_floor_margin = " << rat_line(s.min_floor_margin) << "\n"
           << "clean = " << (s.clean() ? "yes" : "no") << "\n";
        for (const std::string& f : s.failures) os << "failure: " << f << "\n";
        payload = os.str();
    }
    int ec = emit(payload, o.output, out, err);
    if (ec != 0) return ec;
    return s.clean() ? 0 : 1;
}

struct SimOpts {
    int n = 0;
    std::string strategy_a;
    std::string strategy_b;
    int horizon = 0;
    long long trials = 100000;
    uint64_t seed = 0;
    bool seed_given = false;
    int workers = -1;
    std::string thetas;
    std::string theta_step;
    std::string csv_path;
    std::string format = "text";
    std::string output;
};

std::vector<double> parse_theta_grid(const SimOpts& o) {
    std::vector<double> thetas;
    if (!o.theta_step.empty()) {
        Rat step = parse_rat(o.theta_step);
        if (step <= 0 || step > 1) throw std::invalid_argument("--theta-step must be in (0, 1]");
        for (Rat t(0); t <= 1; t += step) thetas.push_back(t.get_d());
        return thetas;
    }
    std::stringstream ss(o.thetas);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        thetas.push_back(parse_rat(item).get_d());
    }
    if (thetas.empty()) throw std::invalid_argument("--thetas has no entries");
    return thetas;
}

int run_simulate(const SimOpts& o, std::ostream& out, std::ostream& err) {
    uint64_t seed = o.seed_given ? o.seed : fresh_seed();
    int workers = resolve_workers(o.workers);

    if (!o.thetas.empty() || !o.theta_step.empty()) {
        std::vector<double> thetas = parse_theta_grid(o);
        std::vector<AWScanRow> rows = aw_scan(o.n, thetas, o.horizon, o.trials, seed, workers);
        std::string csv = aw_scan_csv(rows);
        if (!o.csv_path.empty()) {
            int ec = emit(csv, o.csv_path, out, err);
            if (ec != 0) return ec;
        }
        if (o.format == "json") {
            Json j;
            j["n"] = o.n;
            j["horizon"] = o.horizon;
            j["trials"] = o.trials;
            j["seed"] = seed;
            Json jr = Json::array();
            for (const AWScanRow& r : rows) {
                Json row;
                row["theta"] = r.theta;
                row["mean"] = r.estimate.mean;
                row["std_error"] = r.estimate.std_error;
                row["meet_fraction"] = r.estimate.meet_fraction;
                jr.push_back(std::move(row));
            }
            j["rows"] = std::move(jr);
            return emit(dump(j), o.output, out, err);
        }
        return emit(csv, o.output, out, err);
    }

    if (o.strategy_a.empty() || o.strategy_b.empty()) {
        err << "simulate needs --strategy-a and --strategy-b (or --thetas/--theta-step)\n";
        return 2;
    }
    Strategy a = resolve_strategy(o.strategy_a, o.n, o.horizon);
    Strategy b = resolve_strategy(o.strategy_b, o.n, o.horizon);
    if (!a.has_sampler()) attach_table_sampler(a);
    if (!b.has_sampler()) attach_table_sampler(b);
    MCEstimate est = estimate_expected_waiting(a, b, o.horizon, o.trials, seed, workers);

    std::ostringstream csv;
    csv << "mean,std_error,meet_fraction,trials,horizon,seed\n"
        << std::setprecision(10) << est.mean << ',' << est.std_error << ',' << est.meet_fraction
        << ',' << est.trials << ',' << est.horizon << ',' << est.seed << '\n';
    if (!o.csv_path.empty()) {
        int ec = emit(csv.str(), o.csv_path, out, err);
        if (ec != 0) return ec;
    }

    if (o.format == "json") {
        Json j;
        j["n"] = o.n;
        j["strategy_a"] = o.strategy_a;
        j["strategy_b"] = o.strategy_b;
        j["horizon"] = est.horizon;
        j["trials"] = est.trials;
        j["seed"] = est.seed;
        j["mean"] = est.mean;
        j["mean_over_n"] = est.mean / o.n;
        j["std_error"] = est.std_error;
        j["meet_fraction"] = est.meet_fraction;
        return emit(dump(j), o.output, out, err);
    }
    if (o.format == "csv") return emit(csv.str(), o.output, out, err);
    std::ostringstream os;
    os << "n = " << o.n << "\n"
       << "strategy_a = " << o.strategy_a << "\n"
       << "strategy_b = " << o.strategy_b << "\n"
       << "horizon = " << est.horizon << "\n"
       << "trials = " << est.trials << "\n"
       << "seed = " << est.seed << "\n"
       << "mean = " << fl(est.mean) << "\n"
       << "mean_over_n = " << fl(est.mean / o.n) << "\n"
       << "std_error = " << fl(est.std_error) << "\n"
       << "meet_fraction = " << fl(est.meet_fraction) << "\n";
    return emit(os.str(), o.output, out, err);
}

struct OptThetaOpts {
    int n = 0;
    std::string mode = "exact";
    int resolution = 21;
    int horizon = 0;
    long long trials = 20000;
    uint64_t seed = 0;
    bool seed_given = false;
    int workers = -1;
    std::string format = "json";
    std::string output;
};

int run_optimize_theta(const OptThetaOpts& o, std::ostream& out, std::ostream& err) {
    ThetaOptResult r;
    uint64_t seed = 0;
    int horizon = 0;
    if (o.mode == "exact") {
        r = optimize_theta_exact(o.n, o.resolution);
    } else {
        seed = o.seed_given ? o.seed : fresh_seed();
        horizon = o.horizon > 0 ? o.horizon : 20 * o.n;
        r = optimize_theta_mc(o.n, o.resolution, horizon, o.trials, seed,
                              resolve_workers(o.workers));
    }

    if (o.format == "json") {
        Json j;
        j["subcommand"] = "optimize-theta";
        j["n"] = o.n;
        j["mode"] = o.mode;
        j["resolution"] = o.resolution;
        if (o.mode == "mc") {
            j["horizon"] = horizon;
            j["trials"] = o.trials;
            j["seed"] = seed;
        }
        j["theta"] = r.theta;
        j["value"] = r.value;
        if (r.exact_mode) put_rat(j, "value_exact", r.value_exact);
        return emit(dump(j), o.output, out, err);
    }
    std::ostringstream os;
    os << "mode = " << o.mode << "\n"
       << "n = " << o.n << "\n"
       << "resolution = " << o.resolution << "\n";
    if (o.mode == "mc") {
        os << "horizon = " << horizon << "\ntrials = " << o.trials << "\nseed = " << seed << "\n";
    }
    os << "theta = " << fl(r.theta) << "\n"
       << "value = " << fl(r.value) << "\n";
    if (r.exact_mode) os << "value_exact = " << rat_line(r.value_exact) << "\n";
    return emit(os.str(), o.output, out, err);
}

struct OptSymOpts {
    int n = 0;
    int restarts = 32;
    uint64_t seed = 0;
    bool seed_given = false;
    int workers = -1;
    std::string export_path;
    std::string format = "json";
    std::string output;
};

int run_optimize_symmetric(const OptSymOpts& o, std::ostream& out, std::ostream& err) {
    uint64_t seed = o.seed_given ? o.seed : fresh_seed();
    SymOptResult r = optimize_symmetric_strategy(o.n, o.restarts, seed, resolve_workers(o.workers));
    if (!o.export_path.empty()) save_strategy(r.strategy, o.export_path);

    if (o.format == "json") {
        Json j;
        j["subcommand"] = "optimize-symmetric";
        j["n"] = o.n;
        j["restarts"] = o.restarts;
        j["seed"] = seed;
        put_rat(j, "value", r.value_exact);
        j["value_float"] = r.value_float;
        j["fw_gap"] = r.fw_gap;
        j["best_restart"] = r.best_restart;
        j["iterations"] = r.iterations;
        j["support_size"] = r.strategy.support.size();
        j["strategy"] = format_strategy(r.strategy);
        return emit(dump(j), o.output, out, err);
    }
    std::ostringstream os;
    os << "n = " << o.n << "\n"
       << "restarts = " << o.restarts << "\n"
       << "seed = " << seed << "\n"
       << "value = " << rat_line(r.value_exact) << "\n"
       << "fw_gap = " << fl(r.fw_gap) << "\n"
       << "best_restart = " << r.best_restart << "\n"
       << "iterations = " << r.iterations << "\n"
       << "support_size = " << r.strategy.support.size() << "\n"
       << format_strategy(r.strategy);
    return emit(os.str(), o.output, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact and stochastic laboratory for the rendezvous game on n locations", "rdv"};
    app.require_subcommand(1);

    PairOpts ev;
    CLI::App* eval = app.add_subcommand("eval", "Exact waiting time for one tactic pair");
    eval->add_option("--n", ev.n, "number of locations")->required();
    eval->add_option("--tactic-a", ev.tactic_a, "itinerary, e.g. \"1 2 3 4\"")->required();
    eval->add_option("--tactic-b", ev.tactic_b, "itinerary for the second player")->required();
    eval->add_option("--format", ev.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    eval->add_option("-o,--output", ev.output, "write the result to this file");

    PairOpts sv;
    CLI::App* surv = app.add_subcommand("survival", "Exact survival curve P(Z > k)");
    surv->add_option("--n", sv.n, "number of locations")->required();
    surv->add_option("--tactic-a", sv.tactic_a, "itinerary, e.g. \"1 2 3 4\"")->required();
    surv->add_option("--tactic-b", sv.tactic_b, "itinerary for the second player")->required();
    surv->add_option("--format", sv.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    surv->add_option("-o,--output", sv.output, "write the result to this file");

    PairOpts mo;
    CLI::App* mom = app.add_subcommand("moments", "Exact moments of the meeting count X");
    mom->add_option("--n", mo.n, "number of locations")->required();
    mom->add_option("--tactic-a", mo.tactic_a, "itinerary, e.g. \"1 2 3 4\"")->required();
    mom->add_option("--tactic-b", mo.tactic_b, "itinerary for the second player")->required();
    mom->add_option("--format", mo.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    mom->add_option("-o,--output", mo.output, "write the result to this file");

    PhiOpts ph;
    CLI::App* phi = app.add_subcommand("phi", "Exact expected waiting time of a strategy pair");
    phi->add_option("--n", ph.n, "number of locations")->required();
    phi->add_option("--strategy-a", ph.strategy_a,
                    "strategy spec: wfm-baby, wfm-mommy, uniform, aw:<theta>, "
                    "tactic:<i1 i2 ...>, file:<path>")
        ->required();
    phi->add_option("--strategy-b", ph.strategy_b, "strategy spec for the second player")
        ->required();
    phi->add_option("--export-a", ph.export_a, "write resolved strategy A to this file");
    phi->add_option("--export-b", ph.export_b, "write resolved strategy B to this file");
    phi->add_option("--format", ph.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    phi->add_option("-o,--output", ph.output, "write the result to this file");

    VerifyOpts vo;
    CLI::App* verify = app.add_subcommand("verify", "Run a lemma verifier and report margins");
    verify
        ->add_option("lemma", vo.lemma,
                     "one of: pb-waiting, moment-claims, var-pb, dp-var, markov, "
                     "same-kind-gap, theorem1, split")
        ->required()
        ->check(CLI::IsMember({"pb-waiting", "moment-claims", "var-pb", "dp-var", "markov",
                               "same-kind-gap", "theorem1", "split"}));
    verify->add_option("--n", vo.n, "number of locations");
    verify->add_option("--tactic-a", vo.tactic_a, "check one explicit pair instead of a sweep");
    verify->add_option("--tactic-b", vo.tactic_b, "second itinerary of the explicit pair");
    verify->add_option("--mode", vo.mode, "sweep mode")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    verify->add_option("--samples", vo.samples, "pair count in sampled mode")
        ->check(CLI::PositiveNumber);
    verify->add_option("--graphs", vo.graphs, "graph count for the split verifier")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tuple-budget", vo.tuple_budget,
                       "product-expectation tuples per arity in moment-claims")
        ->check(CLI::PositiveNumber);
    CLI::Option* vo_seed = verify->add_option("--seed", vo.seed, "sampling seed");
    verify->add_option("--workers", vo.workers, "worker threads (default RDV_WORKERS or 1)");
    verify->add_option("--alpha", vo.alpha, "variance floor for var-pb, as p/q");
    verify->add_option("--strategy", vo.strategy, "strategy spec for theorem1");
    verify->add_option("--format", vo.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("-o,--output", vo.output, "write the report to this file");

    ScanOpts sc;
    CLI::App* scan = app.add_subcommand("scan", "Sweep tactic pairs and check engine agreement, "
                                                "the waiting-time floor, and moment caps");
    scan->add_option("--n", sc.n, "number of locations")->required();
    scan->add_option("--mode", sc.mode, "sweep mode")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    scan->add_option("--samples", sc.samples, "pair count in sampled mode")
        ->check(CLI::PositiveNumber);
    CLI::Option* sc_seed = scan->add_option("--seed", sc.seed, "sampling seed");
    scan->add_option("--workers", sc.workers, "worker threads (default RDV_WORKERS or 1)");
    scan->add_flag("--no-engine-compare", sc.no_engine_compare,
                   "skip the enumeration cross-check");
    scan->add_flag("--lemmas", sc.lemmas, "also run the per-pair lemma verifiers");
    scan->add_option("--alpha", sc.alpha, "variance floor handed to var-pb, as p/q");
    scan->add_option("--format", sc.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    scan->add_option("-o,--output", sc.output, "write the summary to this file");

    SimOpts si;
    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo waiting-time estimate");
    sim->add_option("--n", si.n, "number of locations")->required();
    sim->add_option("--strategy-a", si.strategy_a, "strategy spec (see phi --help)");
    sim->add_option("--strategy-b", si.strategy_b, "strategy spec for the second player");
    sim->add_option("--horizon", si.horizon, "rounds per trial; censored trials count horizon+1")
        ->required();
    sim->add_option("--trials", si.trials, "trial count")->check(CLI::PositiveNumber);
    CLI::Option* si_seed = sim->add_option("--seed", si.seed, "simulation seed");
    sim->add_option("--workers", si.workers, "worker threads (default RDV_WORKERS or 1)");
    sim->add_option("--thetas", si.thetas,
                    "comma-separated stay probabilities: scan symmetric multi-block play "
                    "instead of simulating one strategy pair");
    sim->add_option("--theta-step", si.theta_step, "exact grid pitch for the same scan, as p/q");
    sim->add_option("--csv", si.csv_path, "also write the CSV rendering to this file");
    sim->add_option("--format", si.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sim->add_option("-o,--output", si.output, "write the result to this file");

    CLI::App* opt = app.add_subcommand("optimize", "Search for good strategies");
    opt->require_subcommand(1);

    OptThetaOpts ot;
    CLI::App* opt_theta = opt->add_subcommand("theta", "Best stay probability for symmetric play");
    opt_theta->add_option("--n", ot.n, "number of locations")->required();
    opt_theta->add_option("--mode", ot.mode, "objective: exact table or Monte Carlo")
        ->check(CLI::IsMember({"exact", "mc"}));
    opt_theta->add_option("--resolution", ot.resolution, "grid points on [0, 1]")
        ->check(CLI::PositiveNumber);
    opt_theta->add_option("--horizon", ot.horizon, "rounds per trial in mc mode (default 20n)");
    opt_theta->add_option("--trials", ot.trials, "trials per probe in mc mode")
        ->check(CLI::PositiveNumber);
    CLI::Option* ot_seed = opt_theta->add_option("--seed", ot.seed, "simulation seed (mc mode)");
    opt_theta->add_option("--workers", ot.workers, "worker threads (default RDV_WORKERS or 1)");
    opt_theta->add_option("--format", ot.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    opt_theta->add_option("-o,--output", ot.output, "write the result to this file");

    OptSymOpts os_;
    CLI::App* opt_sym =
        opt->add_subcommand("symmetric", "Frank-Wolfe descent over the tactic simplex");
    opt_sym->add_option("--n", os_.n, "number of locations")->required();
    opt_sym->add_option("--restarts", os_.restarts, "multistart count")
        ->check(CLI::PositiveNumber);
    CLI::Option* os_seed = opt_sym->add_option("--seed", os_.seed, "restart seed");
    opt_sym->add_option("--workers", os_.workers, "worker threads (default RDV_WORKERS or 1)");
    opt_sym->add_option("--export", os_.export_path, "write the best strategy to this file");
    opt_sym->add_option("--format", os_.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    opt_sym->add_option("-o,--output", os_.output, "write the result to this file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    vo.seed_given = vo_seed->count() > 0;
    sc.seed_given = sc_seed->count() > 0;
    si.seed_given = si_seed->count() > 0;
    ot.seed_given = ot_seed->count() > 0;
    os_.seed_given = os_seed->count() > 0;

    try {
        if (eval->parsed()) return run_eval(ev, false, out, err);
        if (surv->parsed()) return run_eval(sv, true, out, err);
        if (mom->parsed()) return run_moments(mo, out, err);
        if (phi->parsed()) return run_phi(ph, out, err);
        if (verify->parsed()) return run_verify(vo, out, err);
        if (scan->parsed()) return run_scan(sc, out, err);
        if (sim->parsed()) return run_simulate(si, out, err);
        if (opt->parsed()) {
            if (opt_theta->parsed()) return run_optimize_theta(ot, out, err);
            if (opt_sym->parsed()) return run_optimize_symmetric(os_, out, err);
        }
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace rdv
