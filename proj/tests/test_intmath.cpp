#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hasseforge/intmath.hpp"
#include "support/oracles.hpp"

using namespace hf;

TEST_CASE("primality basics") {
    CHECK(is_prime(Int(2)));
    CHECK_FALSE(is_prime(Int(1)));
    CHECK_FALSE(is_prime(Int(0)));
    CHECK_FALSE(is_prime(Int(-7)));
    CHECK_FALSE(is_prime(Int(561)));   // Carmichael
    CHECK_FALSE(is_prime(Int(2047)));  // strong pseudoprime base 2
    CHECK(is_prime(Int("2305843009213693951")));           // 2^61 - 1
    CHECK_FALSE(is_prime(Int("147573952589676412927")));   // 2^67 - 1 composite
    CHECK(is_prime(Int("618970019642690137449562111")));   // 2^89 - 1, beyond 64 bits
    CHECK_FALSE(primality_is_deterministic(Int("618970019642690137449562111")));
    CHECK(primality_is_deterministic(Int("18446744073709551615")));

    // against a sieve
    auto primes = primes_below(2000);
    std::set<u32> ps(primes.begin(), primes.end());
    for (u32 n = 0; n < 2000; ++n) CHECK(is_prime(Int(n)) == (ps.count(n) > 0));
}

TEST_CASE("legendre examples and Euler criterion") {
    CHECK(legendre(Int(2), Int(7)) == 1);
    CHECK(legendre(Int(3), Int(7)) == -1);
    CHECK(legendre(Int(14), Int(7)) == 0);
    CHECK_THROWS_AS(legendre(Int(3), Int(9)), domain_error);
    CHECK_THROWS_AS(legendre(Int(3), Int(2)), domain_error);

    for (u32 p : primes_below(98)) {
        if (p == 2) continue;
        for (u32 a = 0; a < p; ++a) {
            Int euler, e((p - 1) / 2), base(a), mod(p);
            mpz_powm(euler.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
            int expected = euler == 1 ? 1 : (euler == p - 1 ? -1 : 0);
            CHECK(legendre(Int(a), Int(p)) == expected);
        }
        for (u32 a = 1; a < p; ++a)
            for (u32 b = 1; b < p; b += 3)
                CHECK(legendre(Int(a) * b, Int(p)) ==
                      legendre(Int(a), Int(p)) * legendre(Int(b), Int(p)));
    }
}

TEST_CASE("hilbert symbol examples") {
    CHECK(hilbert(Int(1), Int(-17), Place::infinity()) == 1);
    CHECK(hilbert(Int(1), Int(6), Place::finite(Int(2))) == 1);
    CHECK(hilbert(Int(-1), Int(-1), Place::infinity()) == -1);
    CHECK(hilbert(Int(5), Int(3), Place::finite(Int(3))) == -1);
    CHECK_THROWS_AS(hilbert(Int(0), Int(1), Place::infinity()), domain_error);
}

TEST_CASE("hilbert symbol at 2 against residue counting") {
    // (a,b)_2 = 1  iff  z^2 = a x^2 + b y^2 has a primitive zero mod 2^8
    for (long a = -40; a <= 40; ++a) {
        for (long b = -40; b <= 40; b += 3) {
            if (a == 0 || b == 0) continue;
            long va = a, vb = b;
            int v2 = 0;
            while (va % 2 == 0) { va /= 2; ++v2; }
            while (vb % 2 == 0) { vb /= 2; ++v2; }
            if (v2 > 2) continue;  // keep the counting modulus adequate
            bool soluble = oracle::padic_isotropic_oracle({a, b, -1}, 2, 8);
            CHECK(hilbert(Int(a), Int(b), Place::finite(Int(2))) == (soluble ? 1 : -1));
        }
    }
}

TEST_CASE("hilbert symbol properties") {
    std::vector<Place> places{Place::infinity(), Place::finite(Int(2)), Place::finite(Int(3)),
                              Place::finite(Int(5)), Place::finite(Int(7))};
    for (u64 i = 0; i < 300; ++i) {
        u64 w = 0;
        Int a = Int(rng_below(11, i, w, 4001)) - 2000;
        Int b = Int(rng_below(11, i, w, 4001)) - 2000;
        Int c = Int(rng_below(11, i, w, 4001)) - 2000;
        if (a == 0 || b == 0 || c == 0) continue;
        for (const Place& v : places) {
            CHECK(hilbert(a, b, v) == hilbert(b, a, v));
            CHECK(hilbert(Int(a * c), b, v) == hilbert(a, b, v) * hilbert(c, b, v));
            CHECK(hilbert(Int(a * a), b, v) == 1);
        }
    }
    // (u, p)_p = (u/p) for units u
    for (u32 p : {3u, 5u, 7u, 11u, 13u})
        for (u32 u = 1; u < p; ++u)
            CHECK(hilbert(Int(u), Int(p), Place::finite(Int(p))) == legendre(Int(u), Int(p)));
}

TEST_CASE("hilbert product formula") {
    for (u64 i = 0; i < 2000; ++i) {
        u64 w = 0;
        Int a = Int(rng_below(17, i, w, 20001)) - 10000;
        Int b = Int(rng_below(17, i, w, 20001)) - 10000;
        if (a == 0 || b == 0) continue;
        int prod = hilbert(a, b, Place::infinity());
        std::set<Int> ps{Int(2)};
        for (auto& [p, e] : factorize(Int(a * b))) ps.insert(p);
        for (const Int& p : ps) prod *= hilbert(a, b, Place::finite(p));
        CHECK(prod == 1);
    }
}

TEST_CASE("factorization helpers") {
    auto f = factorize(Int(-2310));
    std::vector<std::pair<Int, unsigned>> expected{{Int(2), 1}, {Int(3), 1}, {Int(5), 1},
                                                   {Int(7), 1}, {Int(11), 1}};
    CHECK(f == expected);
    CHECK(smallest_prime_factor(Int(9409)) == 97);  // 97^2
    Int sq;
    CHECK(squarefree_part(Int(-720), sq) == -5);
    CHECK(sq == 12);
    CHECK(squarefree_part(Int(1), sq) == 1);
    Int n = Int("1000003") * Int("1000033");
    CHECK(smallest_prime_factor(n) == 1000003);

    CHECK(is_square(Int(0)));
    CHECK(is_square(Int(144)));
    CHECK_FALSE(is_square(Int(-4)));
    CHECK(isqrt(Int(99)) == 9);
}

TEST_CASE("valuation") {
    Int u;
    CHECK(valuation(Int(48), Int(2), u) == 4);
    CHECK(u == 3);
    CHECK(valuation(Int(-45), Int(3), u) == 2);
    CHECK(u == -5);
    CHECK(valuation(Int(7), Int(5), u) == 0);
}
