#include "rdv/rational.hpp"

#include <cctype>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace rdv {

const Int& factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    static std::vector<Int> cache{1};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n) {
        cache.push_back(cache.back() * static_cast<long>(cache.size()));
    }
    return cache[n];
}

Int falling(int n, int k) {
    Int p = 1;
    for (int i = 0; i < k; ++i) p *= (n - i);
    return p;
}

Rat pow2(int e) {
    Rat r;
    if (e >= 0) {
        mpq_set_ui(r.get_mpq_t(), 1, 1);
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), e);
    } else {
        mpq_set_ui(r.get_mpq_t(), 1, 1);
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -e);
    }
    return r;
}

Rat rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

Rat parse_rat(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("parse_rat: empty string");

    auto is_int = [](const std::string& t) {
        size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) throw std::invalid_argument("parse_rat: bad fraction: " + text);
        Int qq(q);
        if (qq == 0) throw std::invalid_argument("parse_rat: zero denominator: " + text);
        Rat r(Int(p), qq);
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() || ip == "+" || ip == "-") ip += "0";
        if (!is_int(ip) || (!fp.empty() && !is_int(fp)))
            throw std::invalid_argument("parse_rat: bad decimal: " + text);
        bool neg = ip[0] == '-';
        Int scale = 1;
        for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
        Int whole(ip);
        Int frac = fp.empty() ? Int(0) : Int(fp);
        Int num = whole * scale + (neg ? -frac : frac);
        Rat r(num, scale);
        r.canonicalize();
        return r;
    }
    if (!is_int(s)) throw std::invalid_argument("parse_rat: not a number: " + text);
    return Rat(Int(s));
}

std::string fraction_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string decimal_str(const Rat& r, int sig_digits) {
    if (sig_digits < 1) sig_digits = 1;
    if (r == 0) return "0";
    mpf_class f(0, 64 + 4 * sig_digits);
    mpf_set_q(f.get_mpf_t(), r.get_mpq_t());
    mp_exp_t exp10 = 0;
    std::string digits = f.get_str(exp10, 10, sig_digits);
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(digits.begin());
    // value = 0.digits * 10^exp10
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string out;
    long e = static_cast<long>(exp10);
    if (e >= 1 && e <= sig_digits + 3) {  // positional, point inside or just past digits
        if (static_cast<long>(digits.size()) <= e) {
            out = digits + std::string(e - digits.size(), '0');
        } else {
            out = digits.substr(0, e) + "." + digits.substr(e);
        }
    } else if (e <= 0 && e > -4) {  // small magnitude, leading zeros
        out = "0." + std::string(-e, '0') + digits;
    } else {  // scientific
        out = digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(e - 1);
    }
    return neg ? "-" + out : out;
}

}  // namespace rdv
