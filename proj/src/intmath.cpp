#include "hasseforge/intmath.hpp"

#include <algorithm>
#include <numeric>

namespace hf {

// ── Miller-Rabin ────────────────────────────────────────────────────────────

namespace {

// strong probable prime test to base a; n odd >= 3, 1 < a < n-1
bool mr_witness_passes(const Int& n, const Int& a) {
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

// strong Lucas probable prime test with Selfridge parameters (method A)
bool strong_lucas_passes(const Int& n) {
    // find D = 5, -7, 9, -11, ... with (D/n) = -1
    Int D = 5;
    for (;;) {
        int j = jacobi(D, n);
        if (j == -1) break;
        if (j == 0 && abs(D) != n) return false;  // proper factor found
        D = (D > 0) ? Int(-(D + 2)) : Int(-(D - 2));
        if (abs(D) > 1000000) return false;  // unreachable for non-squares
    }
    const Int P = 1;
    Int Q = (1 - D) / 4;

    Int d = n + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    auto mod_n = [&](Int v) {
        v %= n;
        if (v < 0) v += n;
        return v;
    };
    auto halve = [&](Int v) {  // division by 2 mod odd n
        if (v % 2 != 0) v += n;
        return mod_n(v / 2);
    };

    // compute U_d, V_d, Q^d by the binary chain
    Int U = 1, V = P, Qk = mod_n(Q);
    long bits = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
    for (long i = bits - 2; i >= 0; --i) {
        // double: (U,V,Qk) -> index 2k
        U = mod_n(U * V);
        V = mod_n(V * V - 2 * Qk);
        Qk = mod_n(Qk * Qk);
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            Int U1 = halve(P * U + V);
            Int V1 = halve(D * U + P * V);
            U = mod_n(U1);
            V = mod_n(V1);
            Qk = mod_n(Qk * mod_n(Q));
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = mod_n(V * V - 2 * Qk);
        if (V == 0) return true;
        Qk = mod_n(Qk * Qk);
    }
    return false;
}

const u64 kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                            41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

}  // namespace

bool primality_is_deterministic(const Int& n) {
    static const Int two64 = pow_int(Int(2), 64);
    return abs(n) < two64;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (u64 p : kSmallPrimes) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (primality_is_deterministic(n)) {
        // witness set proven complete for n < 3.3 * 10^24
        for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
            if (!mr_witness_passes(n, Int(a))) return false;
        return true;
    }
    if (!mr_witness_passes(n, Int(2))) return false;
    if (is_square(n)) return false;
    if (!strong_lucas_passes(n)) return false;
    // 64 extra rounds with bases derived from n; error < 4^-64
    u64 h = 0;
    for (u64 limb = 0, cnt = mpz_size(n.get_mpz_t()); limb < cnt; ++limb)
        h = mix64(h ^ mpz_getlimbn(n.get_mpz_t(), limb));
    for (int r = 0; r < 64; ++r) {
        Int a = 2 + Int(mix64(h + static_cast<u64>(r))) % (n - 3);
        if (!mr_witness_passes(n, a)) return false;
    }
    return true;
}

// ── symbols ─────────────────────────────────────────────────────────────────

int jacobi(Int a, Int n) {
    if (n <= 0 || n % 2 == 0) throw domain_error("jacobi: modulus must be odd positive");
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            u64 m8 = to_u64(n % 8);
            if (m8 == 3 || m8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int legendre(const Int& a, const Int& p) {
    if (p <= 2 || !is_prime(p)) throw domain_error("legendre: modulus must be an odd prime");
    return jacobi(a, p);
}

Place Place::finite(const Int& prime) {
    if (!is_prime(prime)) throw domain_error("place: not a prime");
    return Place{false, prime};
}

std::string to_string(const Place& v) {
    return v.at_infinity ? std::string("infinity") : v.p.get_str();
}

unsigned valuation(const Int& n, const Int& p, Int& unit) {
    if (n == 0) throw domain_error("valuation of zero");
    unsigned v = 0;
    unit = n;
    while (mpz_divisible_p(unit.get_mpz_t(), p.get_mpz_t())) {
        unit /= p;
        ++v;
    }
    return v;
}

namespace {

inline int eps2(const Int& u) { return (u % 4 == 3 || u % 4 == -1) ? 1 : 0; }
inline int omega2(const Int& u) {
    u64 m = to_u64(((u % 8) + 8) % 8);
    return (m == 3 || m == 5) ? 1 : 0;
}

}  // namespace

int hilbert(const Int& a, const Int& b, const Place& v) {
    if (a == 0 || b == 0) throw domain_error("hilbert: arguments must be nonzero");
    if (v.at_infinity) return (a < 0 && b < 0) ? -1 : 1;
    const Int& p = v.p;
    Int u, w;
    unsigned alpha = valuation(a, p, u);
    unsigned beta = valuation(b, p, w);
    int bit = 0;
    if (p == 2) {
        bit = (eps2(u) & eps2(w)) ^ ((alpha & 1) & omega2(w)) ^ ((beta & 1) & omega2(u));
    } else {
        if ((alpha & 1) && (beta & 1) && p % 4 == 3) bit ^= 1;
        if (beta & 1) bit ^= (jacobi(u, p) == -1);
        if (alpha & 1) bit ^= (jacobi(w, p) == -1);
    }
    return bit ? -1 : 1;
}

int hilbert(const Int& a, const Int& b, const Int& p) {
    return hilbert(a, b, Place::finite(p));
}

// ── integer helpers ─────────────────────────────────────────────────────────

bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

Int isqrt(const Int& n) {
    if (n < 0) throw domain_error("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

namespace {

Int rho_brent(const Int& n) {
    // n odd composite, not a prime power captured by trial division
    for (u64 attempt = 1;; ++attempt) {
        Int y = Int(mix64(attempt * 0x51ed'2701u) % 1000003) % n;
        Int c = Int(mix64(attempt * 0xc0ff'ee11u) % 1000003) % n;
        if (c == 0) c = 1;
        Int x = y, ys = y, d = 1, q = 1;
        u64 r = 1;
        const u64 m = 128;
        while (d == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = (y * y + c) % n;
            for (u64 k = 0; k < r && d == 1; k += m) {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (d == n) {
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                Int diff = abs(x - ys);
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (d != n) return d;
    }
}

void factor_rec(Int n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = rho_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    if (n == 0) throw domain_error("factorize zero");
    if (n < 0) n = -n;
    std::vector<std::pair<Int, unsigned>> out;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(Int(p), e);
    }
    for (u64 p = 53; p < 100000 && n > 1; p += 2) {
        if (Int(p) * p > n) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(Int(p), e);
    }
    if (n > 1) {
        std::vector<Int> rest;
        factor_rec(n, rest);
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.emplace_back(rest[i], static_cast<unsigned>(j - i));
            i = j;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int smallest_prime_factor(const Int& n) {
    if (n < 2) throw domain_error("smallest_prime_factor: n >= 2 required");
    if (is_prime(n)) return n;
    auto f = factorize(n);
    return f.front().first;
}

Int squarefree_part(const Int& n, Int& sq) {
    if (n == 0) throw domain_error("squarefree_part of zero");
    Int part = (n < 0) ? Int(-1) : Int(1);
    sq = 1;
    for (auto& [p, e] : factorize(n)) {
        if (e & 1) part *= p;
        sq *= pow_int(p, e / 2);
    }
    return part;
}

std::vector<u32> primes_below(u32 bound) {
    std::vector<u32> out;
    if (bound <= 2) return out;
    std::vector<bool> comp(bound, false);
    for (u32 i = 2; i < bound; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = static_cast<u64>(i) * i; j < bound; j += i) comp[j] = true;
    }
    return out;
}

}  // namespace hf
