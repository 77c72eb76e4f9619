#pragma once

#include <utility>
#include <vector>

#include "hasseforge/base.hpp"

namespace hf {

// ── primality ───────────────────────────────────────────────────────────────
// Deterministic Miller-Rabin witnesses below 2^64; Baillie-PSW plus 64 fixed
// derived Miller-Rabin rounds above that, error < 2^-128.
bool is_prime(const Int& n);
bool primality_is_deterministic(const Int& n);

// ── quadratic symbols ───────────────────────────────────────────────────────
int jacobi(Int a, Int n);                       // n odd positive
int legendre(const Int& a, const Int& p);       // p odd prime, else domain_error

struct Place {
    bool at_infinity = false;
    Int p{0};

    static Place infinity() { return Place{true, Int(0)}; }
    static Place finite(const Int& prime);      // validates primality
    bool operator==(const Place&) const = default;
};
std::string to_string(const Place& v);

// (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over the
// completion at v
int hilbert(const Int& a, const Int& b, const Place& v);
int hilbert(const Int& a, const Int& b, const Int& p);  // finite place shortcut

// ── integer helpers ─────────────────────────────────────────────────────────
unsigned valuation(const Int& n, const Int& p, Int& unit);  // n = p^v * unit
bool is_square(const Int& n);
Int isqrt(const Int& n);

// factorization by trial division + Pollard-Brent rho; meant for the small
// coefficients and specialized prime products this library manipulates
std::vector<std::pair<Int, unsigned>> factorize(Int n);
Int smallest_prime_factor(const Int& n);        // n >= 2
// n = part * sq^2 with part squarefree carrying the sign of n
Int squarefree_part(const Int& n, Int& sq);

std::vector<u32> primes_below(u32 bound);

}  // namespace hf
