#include "rdv/strategy.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rdv {

Strategy make_table_strategy(int n, std::vector<StrategyEntry> support) {
    if (n < 2) throw std::invalid_argument("make_table_strategy: n must be at least 2");
    if (support.empty()) throw std::invalid_argument("make_table_strategy: empty support");
    Rat total = 0;
    for (const auto& e : support) {
        if (e.tactic.n != n)
            throw std::invalid_argument("make_table_strategy: tactic has mismatched n");
        if (e.weight < 0)
            throw std::invalid_argument("make_table_strategy: negative weight");
        total += e.weight;
    }
    if (total != 1)
        throw std::invalid_argument("make_table_strategy: weights sum to " + fraction_str(total) +
                                    ", expected 1");
    support.erase(std::remove_if(support.begin(), support.end(),
                                 [](const StrategyEntry& e) { return e.weight == 0; }),
                  support.end());
    Strategy s;
    s.n = n;
    s.support = std::move(support);
    return s;
}

Strategy point_mass(const Tactic& t) {
    return make_table_strategy(t.n, {StrategyEntry{t, Rat(1)}});
}

void attach_table_sampler(Strategy& s) {
    if (!s.has_table()) throw std::invalid_argument("attach_table_sampler: no support table");
    // Cumulative weights as doubles; a frequency test cannot distinguish the
    // sub-ulp rounding from the exact table.
    auto entries = s.support;
    std::vector<double> cum;
    cum.reserve(entries.size());
    double acc = 0;
    for (const auto& e : entries) {
        acc += e.weight.get_d();
        cum.push_back(acc);
    }
    int n = s.n;
    s.sampler = [entries, cum, n](RngStream& rng, int length, std::vector<int>& out) {
        if (length > n)
            throw std::invalid_argument("table sampler: length exceeds tactic length");
        double u = rng.unit() * cum.back();
        size_t idx = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
        if (idx >= entries.size()) idx = entries.size() - 1;
        const auto& it = entries[idx].tactic.itinerary;
        out.assign(it.begin(), it.begin() + length);
    };
}

std::string format_strategy(const Strategy& s) {
    if (!s.has_table()) throw std::invalid_argument("format_strategy: sampler-only strategy");
    std::string out = "n=" + std::to_string(s.n) + "\n";
    for (const auto& e : s.support) {
        out += e.weight.get_num().get_str() + "/" + e.weight.get_den().get_str();
        out += " : " + format_tactic(e.tactic) + "\n";
    }
    return out;
}

Strategy parse_strategy(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    bool have_header = false;
    std::vector<StrategyEntry> support;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first);
        if (!have_header) {
            if (line.rfind("n=", 0) != 0)
                throw std::invalid_argument("parse_strategy: expected header 'n=<int>'");
            n = std::stoi(line.substr(2));
            have_header = true;
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("parse_strategy: missing ':' in line: " + line);
        Rat w = parse_rat(line.substr(0, colon));
        Tactic t = parse_tactic(n, line.substr(colon + 1));
        support.push_back(StrategyEntry{std::move(t), std::move(w)});
    }
    if (!have_header) throw std::invalid_argument("parse_strategy: missing header");
    return make_table_strategy(n, std::move(support));
}

Strategy load_strategy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_strategy: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_strategy(buf.str());
}

void save_strategy(const Strategy& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_strategy: cannot open " + path);
    out << format_strategy(s);
}

}  // namespace rdv
