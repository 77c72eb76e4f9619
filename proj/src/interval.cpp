#include "hasseforge/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace hf {

RatInterval::RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw internal_error("interval endpoints out of order");
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    return {std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4})};
}

namespace {

Rat pow10_rat(int k) {  // 10^k as rational, k may be negative
    Int p = pow_int(Int(10), static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? Rat(p) : Rat(1, p);
}

// ln(x) for 1 <= x <= 2 by the atanh series; u = (x-1)/(x+1) <= 1/3
RatInterval log_mantissa(const Rat& x, int prec) {
    if (x == 1) return RatInterval(Rat(0));
    Rat u = (x - 1) / (x + 1);
    Rat u2 = u * u;
    Rat term = u;  // u^(2j+1)
    Rat sum = 0;
    Rat tol = pow10_rat(-prec) / 4;
    unsigned long j = 0;
    for (;;) {
        sum += term / (2 * j + 1);
        term *= u2;
        ++j;
        // tail <= term/(2j+1) * 1/(1-u2)
        Rat tail = term / (2 * j + 1) / (1 - u2);
        if (tail < tol) {
            return {2 * sum, 2 * (sum + tail)};
        }
    }
}

}  // namespace

RatInterval log_interval(const Rat& x, int prec) {
    if (x <= 0) throw domain_error("log of nonpositive value");
    if (x < 1) {
        RatInterval r = log_interval(Rat(1) / x, prec);
        return {-r.hi, -r.lo};
    }
    // x = 2^e * r with 1 <= r < 2
    unsigned long e = 0;
    Rat r = x;
    while (r >= 2) {
        r /= 2;
        ++e;
    }
    RatInterval ln2 = log_mantissa(Rat(2), prec + 4);
    RatInterval lnr = log_mantissa(r, prec + 4);
    Rat fe(static_cast<long>(e));
    return {fe * ln2.lo + lnr.lo, fe * ln2.hi + lnr.hi};
}

namespace {

// floor of the q-th root of x scaled to `prec` decimal places; lower bound
Rat root_lower(const Rat& x, unsigned long q, int prec) {
    // floor( (x * S^q)^(1/q) ) / S with S = 10^prec
    Int S = pow_int(Int(10), static_cast<unsigned long>(prec));
    Int num = x.get_num() * pow_int(S, q);
    Int scaled = num / x.get_den();  // floor
    Int root;
    mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), q);
    return Rat(root, S);
}

Rat root_upper(const Rat& x, unsigned long q, int prec) {
    Int S = pow_int(Int(10), static_cast<unsigned long>(prec));
    Int num = x.get_num() * pow_int(S, q);
    Int scaled = (num + x.get_den() - 1) / x.get_den();  // ceil
    Int root;
    mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), q);
    return Rat(root + 1, S);
}

}  // namespace

RatInterval root_interval(const RatInterval& x, unsigned long q, int prec) {
    if (x.lo < 0) throw domain_error("root of negative interval");
    if (q == 0) throw domain_error("zeroth root");
    if (q == 1) return x;
    return {root_lower(x.lo, q, prec), root_upper(x.hi, q, prec)};
}

RatInterval pow_interval(const RatInterval& x, const Rat& e, int prec) {
    if (x.lo < 0) throw domain_error("pow of negative interval");
    if (e < 0) throw domain_error("negative exponent unsupported");
    Int n = e.get_num() / e.get_den();
    Rat frac = e - Rat(n);
    unsigned long ni = static_cast<unsigned long>(n.get_ui());
    RatInterval ipart{rat_pow(x.lo, ni), rat_pow(x.hi, ni)};
    if (frac == 0) return ipart;
    // x^frac = (x^p)^(1/q)
    unsigned long p = static_cast<unsigned long>(frac.get_num().get_ui());
    unsigned long q = static_cast<unsigned long>(frac.get_den().get_ui());
    RatInterval xp{rat_pow(x.lo, p), rat_pow(x.hi, p)};
    RatInterval fpart = root_interval(xp, q, prec);
    return ipart * fpart;
}

std::string decimal_lower(const Rat& x, int digits) {
    Int S = pow_int(Int(10), static_cast<unsigned long>(digits));
    Int scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), Int(x.get_num() * S).get_mpz_t(), x.get_den().get_mpz_t());
    bool neg = scaled < 0;
    Int a = abs(scaled);
    std::string s = a.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return (neg ? "-" : "") + s;
}

std::string decimal_upper(const Rat& x, int digits) {
    Int S = pow_int(Int(10), static_cast<unsigned long>(digits));
    Int scaled;
    mpz_cdiv_q(scaled.get_mpz_t(), Int(x.get_num() * S).get_mpz_t(), x.get_den().get_mpz_t());
    bool neg = scaled < 0;
    Int a = abs(scaled);
    std::string s = a.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return (neg ? "-" : "") + s;
}

std::pair<std::string, std::string> decimal_enclosure(const RatInterval& x, int digits) {
    return {decimal_lower(x.lo, digits), decimal_upper(x.hi, digits)};
}

int compare_rat_interval(const Rat& m, const RatInterval& iv) {
    if (m < iv.lo) return -1;
    if (m > iv.hi) return 1;
    return 0;
}

Rat rat_from_decimal(const std::string& text) {
    std::string s = text;
    bool neg = !s.empty() && s[0] == '-';
    if (neg || (!s.empty() && s[0] == '+')) s.erase(0, 1);
    auto dot = s.find('.');
    std::string ip = (dot == std::string::npos) ? s : s.substr(0, dot);
    std::string fp = (dot == std::string::npos) ? "" : s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    Int num = int_from_string(ip + fp);
    Int den = pow_int(Int(10), fp.size());
    Rat r(num, den);
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

}  // namespace hf
