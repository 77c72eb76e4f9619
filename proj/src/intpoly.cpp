#include "hasseforge/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hasseforge/intmath.hpp"

namespace hf {

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(const Int& c) { return IntPoly(std::vector<Int>{c}); }

IntPoly IntPoly::variable() { return IntPoly(std::vector<Int>{Int(0), Int(1)}); }

int IntPoly::degree() const {
    if (c_.empty()) throw domain_error("degree of the zero polynomial");
    return static_cast<int>(c_.size()) - 1;
}

const Int& IntPoly::lc() const {
    if (c_.empty()) throw domain_error("leading coefficient of the zero polynomial");
    return c_.back();
}

Int IntPoly::operator()(const Int& x) const {
    Int v = 0;
    for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(d));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
    std::vector<Int> r = c_;
    for (auto& x : r) x = -x;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::mul_scalar(const Int& s) const {
    if (s == 0) return IntPoly();
    std::vector<Int> r = c_;
    for (auto& x : r) x *= s;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::shifted(size_t k) const {
    if (is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + k, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
    return IntPoly(std::move(r));
}

std::string IntPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const Int& c = c_[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? "+" : "-");
        Int a = abs(c);
        if (first && c < 0) os << "-";
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) os << "t";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

namespace {

IntPoly parse_human(const std::string& s) {
    // terms: [+-] [int] ['*'] ['t' ['^' int]]
    std::vector<Int> coeffs;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    bool any = false;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
            skip_ws();
        } else if (any) {
            throw domain_error("polynomial parse: expected + or - in '" + s + "'");
        }
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        skip_ws();
        if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
        size_t exp = 0;
        bool has_var = false;
        if (i < s.size() && (s[i] == 't' || s[i] == 'T')) {
            has_var = true;
            exp = 1;
            ++i;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                std::string ed;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
                if (ed.empty()) throw domain_error("polynomial parse: exponent missing in '" + s + "'");
                exp = std::stoul(ed);
            }
        }
        if (digits.empty() && !has_var)
            throw domain_error("polynomial parse: empty term in '" + s + "'");
        Int c = digits.empty() ? Int(1) : int_from_string(digits);
        if (coeffs.size() < exp + 1) coeffs.resize(exp + 1, Int(0));
        coeffs[exp] += sign * c;
        skip_ws();
        any = true;
    }
    if (!any) throw domain_error("polynomial parse: empty input");
    return IntPoly(std::move(coeffs));
}

}  // namespace

IntPoly IntPoly::parse(const std::string& text) {
    if (text.find('t') != std::string::npos || text.find('T') != std::string::npos)
        return parse_human(text);
    if (text.find(',') != std::string::npos) {
        std::vector<Int> coeffs;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t b = item.find_first_not_of(" \t");
            size_t e = item.find_last_not_of(" \t");
            if (b == std::string::npos) throw domain_error("polynomial parse: empty coefficient");
            coeffs.push_back(int_from_string(item.substr(b, e - b + 1)));
        }
        return IntPoly(std::move(coeffs));
    }
    return parse_human(text);
}

Int height(const IntPoly& p) {
    if (p.is_zero()) throw domain_error("height of the zero polynomial");
    Int h = 0;
    for (const Int& c : p.coeffs()) h = std::max(h, Int(abs(c)));
    return h;
}

Int tuple_height(const std::vector<IntPoly>& t) {
    Int h = 0;
    for (const auto& p : t) h = std::max(h, height(p));
    return h;
}

Int content(const IntPoly& p) {
    Int g = 0;
    for (const Int& c : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    return divide_exact(p, content(p));
}

IntPoly divide_exact(const IntPoly& A, const Int& d) {
    if (d == 0) throw internal_error("divide_exact by zero");
    std::vector<Int> r = A.coeffs();
    for (auto& c : r) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            throw internal_error("divide_exact: inexact integer division");
        c /= d;
    }
    return IntPoly(std::move(r));
}

IntPoly pseudo_rem(const IntPoly& A, const IntPoly& B) {
    if (B.is_zero()) throw domain_error("pseudo_rem by zero polynomial");
    if (A.is_zero() || A.degree() < B.degree()) return A;
    const Int d = B.lc();
    IntPoly R = A;
    long e = A.degree() - B.degree() + 1;
    while (!R.is_zero() && R.degree() >= B.degree()) {
        IntPoly T = B.shifted(static_cast<size_t>(R.degree() - B.degree())).mul_scalar(R.lc());
        R = R.mul_scalar(d) - T;
        --e;
    }
    if (e > 0) R = R.mul_scalar(pow_int(d, static_cast<unsigned long>(e)));
    return R;
}

bool try_divide(const IntPoly& A, const IntPoly& B, IntPoly& quotient) {
    if (B.is_zero()) return false;
    if (A.is_zero()) {
        quotient = IntPoly();
        return true;
    }
    if (A.degree() < B.degree()) return false;
    std::vector<Int> rem = A.coeffs();
    std::vector<Int> q(A.degree() - B.degree() + 1, Int(0));
    for (long k = A.degree() - B.degree(); k >= 0; --k) {
        Int top = rem[k + B.degree()];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), B.lc().get_mpz_t())) return false;
        Int f = top / B.lc();
        q[k] = f;
        for (int i = 0; i <= B.degree(); ++i) rem[k + i] -= f * B.coeff(i);
    }
    for (const Int& c : rem)
        if (c != 0) return false;
    quotient = IntPoly(std::move(q));
    return true;
}

IntPoly poly_gcd(IntPoly A, IntPoly B) {
    if (A.is_zero() && B.is_zero()) return IntPoly();
    if (A.is_zero()) std::swap(A, B);
    if (B.is_zero()) {
        IntPoly g = primitive_part(A);
        return g.lc() < 0 ? -g : g;
    }
    Int ca = content(A), cb = content(B);
    Int cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    A = divide_exact(A, ca);
    B = divide_exact(B, cb);
    if (A.degree() < B.degree()) std::swap(A, B);
    while (!B.is_zero()) {
        IntPoly R = pseudo_rem(A, B);
        A = B;
        B = R.is_zero() ? IntPoly() : primitive_part(R);
    }
    if (A.lc() < 0) A = -A;
    return A.mul_scalar(cg);
}

namespace {

// Res(A,B) for deg A >= deg B, both nonzero, via the subresultant PRS
Int resultant_ordered(IntPoly A, IntPoly B) {
    Int a = content(A), b = content(B);
    A = divide_exact(A, a);
    B = divide_exact(B, b);
    Int t = pow_int(a, static_cast<unsigned long>(B.degree())) *
            pow_int(b, static_cast<unsigned long>(A.degree()));
    if (B.degree() == 0)  // primitive constant is +-1
        return t * pow_int(B.coeff(0), static_cast<unsigned long>(A.degree()));
    Int g = 1, h = 1;
    int s = 1;
    for (;;) {
        int dA = A.degree(), dB = B.degree();
        unsigned long delta = static_cast<unsigned long>(dA - dB);
        if ((dA & 1) && (dB & 1)) s = -s;
        IntPoly R = pseudo_rem(A, B);
        A = B;
        Int div = g * pow_int(h, delta);
        B = R.is_zero() ? IntPoly() : divide_exact(R, div);
        if (B.is_zero()) return Int(0);  // nonconstant common factor
        g = A.lc();
        if (delta >= 1) {
            Int num = pow_int(g, delta);
            Int den = pow_int(h, delta - 1);
            if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
                throw internal_error("subresultant: h update not integral");
            h = num / den;
        }
        if (B.degree() == 0) {
            unsigned long d = static_cast<unsigned long>(A.degree());
            Int num = pow_int(B.coeff(0), d);
            Int den = pow_int(h, d - 1);
            if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
                throw internal_error("subresultant: final value not integral");
            return s * t * (num / den);
        }
    }
}

}  // namespace

Int resultant(const IntPoly& P, const IntPoly& Q) {
    if (P.is_zero() || Q.is_zero()) throw domain_error("resultant: zero polynomial");
    if (P.degree() >= Q.degree()) return resultant_ordered(P, Q);
    Int r = resultant_ordered(Q, P);
    return ((P.degree() & 1) && (Q.degree() & 1)) ? -r : r;
}

Int discriminant(const IntPoly& P) {
    if (P.is_zero() || P.degree() < 1) throw domain_error("discriminant: degree >= 1 required");
    int d = P.degree();
    if (d == 1) return Int(1);
    Int res = resultant(P, P.derivative());
    if (!mpz_divisible_p(res.get_mpz_t(), P.lc().get_mpz_t()))
        throw internal_error("discriminant: resultant not divisible by lc");
    Int r = res / P.lc();
    return (d % 4 == 2 || d % 4 == 3) ? -r : r;  // (-1)^{d(d-1)/2}
}

SquarefreeDecomposition squarefree_decomposition(const IntPoly& P) {
    if (P.is_zero()) throw domain_error("squarefree decomposition of zero");
    SquarefreeDecomposition out;
    out.content = content(P);
    IntPoly W = divide_exact(P, out.content);
    if (W.lc() < 0) {
        out.sign = -1;
        W = -W;
    }
    if (W.degree() == 0) return out;
    // Yun over primitive integer polynomials
    IntPoly Wd = W.derivative();
    IntPoly g = poly_gcd(W, Wd);
    IntPoly c, d, q;
    if (g.degree() == 0) {
        out.factors.push_back(W);
        return out;
    }
    if (!try_divide(W, g, c)) throw internal_error("yun: W/g inexact");
    IntPoly t1;
    if (!try_divide(Wd, g, t1)) throw internal_error("yun: W'/g inexact");
    d = t1 - c.derivative();
    while (true) {
        if (c.degree() == 0) break;
        IntPoly a = poly_gcd(c, d);
        out.factors.push_back(a);
        IntPoly c2;
        if (!try_divide(c, a, c2)) throw internal_error("yun: c/a inexact");
        IntPoly t2;
        if (!try_divide(d, a, t2)) throw internal_error("yun: d/a inexact");
        c = c2;
        d = t2 - c.derivative();
    }
    // Yun emits with unit constants possibly; normalize factors to positive lc
    for (auto& f : out.factors)
        if (!f.is_zero() && f.lc() < 0) f = -f;
    return out;
}

SquareClassification classify_square(const IntPoly& delta) {
    if (delta.is_zero()) throw domain_error("classify_square: zero polynomial");
    auto dec = squarefree_decomposition(delta);
    for (size_t k = 1; k <= dec.factors.size(); ++k) {
        if ((k & 1) && dec.factors[k - 1].degree() > 0)
            return {SquareClassification::nonsquare, Int(0), IntPoly()};
    }
    IntPoly root = IntPoly::constant(Int(1));
    for (size_t k = 1; k <= dec.factors.size(); ++k)
        for (size_t rep = 0; rep < k / 2; ++rep) root = root * dec.factors[k - 1];
    Int c = dec.content * dec.sign;
    if (is_square(c)) return {SquareClassification::square_in_base, c, root};
    return {SquareClassification::square_over_closure_only, c, root};
}

}  // namespace hf
