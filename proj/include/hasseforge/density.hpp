#pragma once

#include "hasseforge/bundle.hpp"

namespace hf {

// density of pairs (P1,P2) mod 4 with deg P_i <= d_i satisfying
//  (a) P1(0),P2(0) both odd or P1(1),P2(1) both odd, and
//  (b) some P_i(n) = 1 mod 4;
// direct enumeration over all 4^(d1+1) * 4^(d2+1) pairs
Rat sigma2(unsigned d1, unsigned d2, u64 budget = kDefaultTupleBudget, int threads = 0);

// value-vector route, exact for d1,d2 >= 3 where the density is
// degree-independent
Rat sigma2_value_vectors();

struct TVectorCount {
    u64 total = 0;        // 49
    u64 odd_at_0 = 0;     // 25
    u64 odd_at_1 = 0;     // 25
    u64 odd_at_both = 0;  // 1
};
TVectorCount count_T_vectors();

// sigma2 * prod_{3<=ell<=1+min d} (1-((2ell-1)/ell^2)^ell)
//        * prod_{1+min d<ell<=cut} delta2_lower(ell,d1,d2) * [tail]
RatInterval product_lower_bound(unsigned d1, unsigned d2, u64 ell_cut);

struct ConstantCheck {
    std::string name;
    bool ok;
    std::string detail;
};

struct LimitConstant {
    RatInterval P0;    // (1743/4096) * prod over ell in {3,5,7,11,13}
    RatInterval tail;  // prod over primes >= 17 of (1 - ell^-4)
    RatInterval P;     // [P0.lo * tail.lo, P0.hi]
    std::vector<ConstantCheck> checks;
    bool all_ok = true;
};
LimitConstant limit_constant(u64 tail_cutoff = 199);

struct McEstimate {
    u64 samples = 0;
    u64 successes = 0;
    Rat estimate{0};
    Rat stderr_approx{0};
    u64 seed = 0;
    bool exhaustive = false;
};

// samples pairs (P1,P2) with coefficients in [-H,H], positive leading
// coefficient and degrees exactly (d1,d2); success = solve_conic_bundle on
// x^2 P1 + y^2 P2 = z^2 form returns a verified solution within m_max.
// Counter-based streams keyed by (seed, sample index): any partition across
// threads replays identically. exhaustive = sweep the whole coefficient box
// once (samples is then the box size).
McEstimate monte_carlo(unsigned d1, unsigned d2, unsigned H, u64 samples, u64 seed,
                       const Int& m_max, int threads = 0, bool exhaustive = false);

u64 coefficient_box_size(unsigned d1, unsigned d2, unsigned H);

ojson mc_to_json(const McEstimate& e);
ojson limit_constant_to_json(const LimitConstant& lc);

}  // namespace hf
