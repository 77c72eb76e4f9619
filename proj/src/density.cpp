#include "hasseforge/density.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hf {

// ── sigma2 ──────────────────────────────────────────────────────────────────

namespace {

// packed values (P(0),P(1),P(2),P(3)) mod 4, two bits each
std::vector<u8> value_table_mod4(unsigned d) {
    u64 vecs = u64(1) << (2 * (d + 1));  // 4^(d+1)
    std::vector<u8> out(vecs);
    for (u64 idx = 0; idx < vecs; ++idx) {
        u8 packed = 0;
        for (u32 r = 0; r < 4; ++r) {
            u32 v = 0;
            for (unsigned k = d + 1; k-- > 0;) {
                u32 coeff = (idx >> (2 * k)) & 3;
                v = (v * r + coeff) % 4;
            }
            packed |= static_cast<u8>(v << (2 * r));
        }
        out[idx] = packed;
    }
    return out;
}

inline u32 val_at(u8 packed, u32 r) { return (packed >> (2 * r)) & 3; }

inline bool has_one_mod4(u8 packed) {
    for (u32 r = 0; r < 4; ++r)
        if (val_at(packed, r) == 1) return true;
    return false;
}

}  // namespace

Rat sigma2(unsigned d1, unsigned d2, u64 budget, int threads) {
    if (d1 < 1 || d2 < 1) throw domain_error("sigma2: degrees must be >= 1");
    u64 n1 = u64(1) << (2 * (d1 + 1)), n2 = u64(1) << (2 * (d2 + 1));
    if (n1 > budget / n2) throw budget_error("sigma2: pair budget exceeded");
    std::vector<u8> t1 = value_table_mod4(d1);
    std::vector<u8> t2 = value_table_mod4(d2);
    u64 count = 0;
    long n1l = static_cast<long>(n1);
#ifdef _OPENMP
    int T = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(T) reduction(+ : count) schedule(static)
#endif
    for (long i = 0; i < n1l; ++i) {
        u8 a = t1[static_cast<u64>(i)];
        bool a0 = val_at(a, 0) & 1, a1 = val_at(a, 1) & 1;
        bool aone = has_one_mod4(a);
        for (u64 jdx = 0; jdx < n2; ++jdx) {
            u8 b = t2[jdx];
            bool schinzel2 = (a0 && (val_at(b, 0) & 1)) || (a1 && (val_at(b, 1) & 1));
            if (!schinzel2) continue;
            if (aone || has_one_mod4(b)) ++count;
        }
    }
    Rat r(Int(count), Int(n1) * Int(n2));
    r.canonicalize();
    return r;
}

namespace {

// parity-consistent value vectors (w0..w3) mod 4: w0=w2 and w1=w3 mod 2
std::vector<u8> consistent_value_vectors() {
    std::vector<u8> out;
    for (u32 w0 = 0; w0 < 4; ++w0)
        for (u32 w1 = 0; w1 < 4; ++w1)
            for (u32 w2 = 0; w2 < 4; ++w2)
                for (u32 w3 = 0; w3 < 4; ++w3) {
                    if (((w0 ^ w2) & 1) || ((w1 ^ w3) & 1)) continue;
                    out.push_back(static_cast<u8>(w0 | (w1 << 2) | (w2 << 4) | (w3 << 6)));
                }
    return out;
}

}  // namespace

Rat sigma2_value_vectors() {
    // for degrees >= 3 every parity-consistent vector is hit by the same
    // number of polynomials, so the density is a count over vector pairs
    std::vector<u8> vv = consistent_value_vectors();
    u64 count = 0;
    for (u8 a : vv) {
        for (u8 b : vv) {
            bool schinzel2 = ((val_at(a, 0) & val_at(b, 0)) & 1) || ((val_at(a, 1) & val_at(b, 1)) & 1);
            if (!schinzel2) continue;
            if (has_one_mod4(a) || has_one_mod4(b)) ++count;
        }
    }
    Rat r(Int(count), Int(vv.size()) * Int(vv.size()));
    r.canonicalize();
    return r;
}

TVectorCount count_T_vectors() {
    // vectors over {0,2,3} with even differences v0-v2 and v1-v3, i.e. the
    // admissible pairs (0,0),(0,2),(2,0),(2,2),(3,3) in both slots
    TVectorCount out;
    std::vector<std::array<u32, 4>> vecs;
    u32 choices[3] = {0, 2, 3};
    for (u32 a : choices)
        for (u32 b : choices)
            for (u32 c : choices)
                for (u32 d : choices) {
                    if (((a ^ c) & 1) || ((b ^ d) & 1)) continue;
                    vecs.push_back({a, b, c, d});
                }
    for (const auto& v : vecs) {
        for (const auto& w : vecs) {
            bool odd0 = (v[0] & 1) && (w[0] & 1);
            bool odd1 = (v[1] & 1) && (w[1] & 1);
            if (!(odd0 || odd1)) continue;
            out.total++;
            if (odd0) out.odd_at_0++;
            if (odd1) out.odd_at_1++;
            if (odd0 && odd1) out.odd_at_both++;
        }
    }
    return out;
}

// ── prime products ──────────────────────────────────────────────────────────

namespace {

Rat small_ell_factor(u64 ell) {  // 1 - ((2ell-1)/ell^2)^ell
    Rat base(2 * Int(ell) - 1, Int(ell) * Int(ell));
    return 1 - rat_pow(base, static_cast<unsigned long>(ell));
}

}  // namespace

RatInterval product_lower_bound(unsigned d1, unsigned d2, u64 ell_cut) {
    if (ell_cut < 3) throw domain_error("product_lower_bound: cut must be >= 3");
    unsigned dmin = std::min(d1, d2);
    Rat finite = sigma2(d1, d2);
    for (u32 ell : primes_below(static_cast<u32>(ell_cut) + 1)) {
        if (ell < 3) continue;
        if (ell <= dmin + 1)
            finite *= small_ell_factor(ell);
        else
            finite *= delta2_lower(ell, d1, d2);
    }
    // tail over ell > cut: each factor is within
    // [1 - ell^-(1+d1) - ell^-(1+d2) - (2/ell)^ell, 1]; bound the deficit sum
    // over all integers n > cut by integral comparison
    auto zeta_tail = [&](unsigned s) {  // sum_{n > cut} n^-s <= cut^(1-s)/(s-1)
        return Rat(1, (s - 1)) * Rat(1, pow_int(Int(ell_cut), s - 1));
    };
    Rat deficit = zeta_tail(1 + d1) + zeta_tail(1 + d2);
    // sum_{n > cut} (2/n)^n <= (2/(cut+1))^(cut+1) / (1 - 2/(cut+1))
    Rat g(2, Int(ell_cut + 1));
    deficit += rat_pow(g, static_cast<unsigned long>(ell_cut + 1)) / (1 - g);
    Rat tail_lo = 1 - deficit;
    if (tail_lo < 0) tail_lo = 0;
    return RatInterval(finite * tail_lo, finite);
}

LimitConstant limit_constant(u64 tail_cutoff) {
    if (tail_cutoff < 17) throw domain_error("limit_constant: cutoff must be >= 17");
    LimitConstant out;

    Rat p0(1743, 4096);
    for (u64 ell : {3, 5, 7, 11, 13}) p0 *= small_ell_factor(ell);
    out.P0 = RatInterval(p0);

    Rat tail_finite(1);
    for (u32 ell : primes_below(static_cast<u32>(tail_cutoff) + 1))
        if (ell >= 17) tail_finite *= 1 - Rat(1, pow_int(Int(ell), 4));
    // remaining factors: prod_{n > cutoff} (1 - n^-4) >= 1 - 1/(3 cutoff^3)
    Rat rem_lo = 1 - Rat(1, 3 * pow_int(Int(tail_cutoff), 3));
    out.tail = RatInterval(tail_finite * rem_lo, tail_finite);

    out.P = RatInterval(out.P0.lo * out.tail.lo, out.P0.hi);

    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        out.checks.push_back({name, ok, detail});
        out.all_ok &= ok;
    };
    Rat lo3504 = rat_from_decimal("0.3504"), hi3505 = rat_from_decimal("0.3505");
    auto [p0lo, p0hi] = decimal_enclosure(out.P0, 10);
    check("P0_in_0.3504_0.3505", out.P0.lo > lo3504 && out.P0.hi < hi3505,
          "P0 in [" + p0lo + ", " + p0hi + "]");
    check("P0_width_le_1e-6", out.P0.width() <= Rat(1, 1000000), "exact rational, width 0");
    Rat tlo = rat_from_decimal("0.9999723"), thi = rat_from_decimal("0.9999724");
    auto [tl, th] = decimal_enclosure(out.tail, 10);
    check("tail_in_0.9999723_0.9999724", out.tail.lo > tlo && out.tail.hi < thi,
          "tail in [" + tl + ", " + th + "]");
    check("tail_width_le_1e-7", out.tail.width() <= Rat(1, 10000000),
          "width " + decimal_upper(out.tail.width(), 12));
    Rat b_lo = rat_from_decimal("0.3503"), b_hi = rat_from_decimal("0.3504");
    auto [plo, phi] = decimal_enclosure(out.P, 10);
    check("bracket_lower_0.3503_lt_P", b_lo < out.P.lo, "P.lo = " + plo);
    check("bracket_upper_P_lt_0.3504", out.P.hi < b_hi, "P.hi = " + phi);
    return out;
}

// ── Monte Carlo over the coefficient box ────────────────────────────────────

u64 coefficient_box_size(unsigned d1, unsigned d2, unsigned H) {
    // leading coefficient in [1,H], the rest in [-H,H]
    u64 side = 2 * u64(H) + 1;
    u64 total = 1;
    for (unsigned k = 0; k < d1; ++k) total *= side;
    total *= H;
    for (unsigned k = 0; k < d2; ++k) total *= side;
    total *= H;
    return total;
}

namespace {

// decode box element: mixed radix, P1 digits first
std::pair<IntPoly, IntPoly> decode_box(unsigned d1, unsigned d2, unsigned H, u64 index) {
    u64 side = 2 * u64(H) + 1;
    auto take = [&](u64 radix) {
        u64 digit = index % radix;
        index /= radix;
        return digit;
    };
    std::vector<Int> c1(d1 + 1), c2(d2 + 1);
    for (unsigned k = 0; k < d1; ++k) c1[k] = Int(static_cast<long>(take(side)) - static_cast<long>(H));
    c1[d1] = Int(static_cast<long>(take(H)) + 1);
    for (unsigned k = 0; k < d2; ++k) c2[k] = Int(static_cast<long>(take(side)) - static_cast<long>(H));
    c2[d2] = Int(static_cast<long>(take(H)) + 1);
    return {IntPoly(std::move(c1)), IntPoly(std::move(c2))};
}

bool pair_solvable(const IntPoly& p1, const IntPoly& p2, const Int& m_max, int threads) {
    ConicBundleProblem problem;
    problem.a = {Int(1), Int(1), Int(-1)};
    problem.blocks[0] = {p1};
    problem.blocks[1] = {p2};
    try {
        ConicOutcome out = solve_conic_bundle(problem, m_max, threads);
        return std::holds_alternative<ConicSolution>(out);
    } catch (const domain_error&) {
        return false;  // non-Schinzel pairs and similar count as failures
    }
}

}  // namespace

McEstimate monte_carlo(unsigned d1, unsigned d2, unsigned H, u64 samples, u64 seed,
                       const Int& m_max, int threads, bool exhaustive) {
    if (H < 1) throw domain_error("monte_carlo: H >= 1 required");
    if (d1 < 1 || d2 < 1) throw domain_error("monte_carlo: degrees must be >= 1");
    u64 box = coefficient_box_size(d1, d2, H);
    McEstimate est;
    est.seed = seed;
    est.exhaustive = exhaustive;
    est.samples = exhaustive ? box : samples;
    if (est.samples == 0) throw domain_error("monte_carlo: samples >= 1 required");

    u64 successes = 0;
    long N = static_cast<long>(est.samples);
#ifdef _OPENMP
    int T = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(T) reduction(+ : successes) schedule(dynamic, 8)
#endif
    for (long i = 0; i < N; ++i) {
        u64 index;
        if (exhaustive) {
            index = static_cast<u64>(i);
        } else {
            u64 word = 0;
            index = rng_below(seed, static_cast<u64>(i), word, box);
        }
        auto [p1, p2] = decode_box(d1, d2, H, index);
        if (pair_solvable(p1, p2, m_max, 1)) ++successes;
    }
    est.successes = successes;
    est.estimate = Rat(Int(successes), Int(est.samples));
    est.estimate.canonicalize();
    // sqrt(p(1-p)/N) to 9 decimal places, reported as a rational approximation
    Rat var = est.estimate * (1 - est.estimate) / Rat(Int(est.samples));
    Int scaled = (var.get_num() * pow_int(Int(10), 18)) / var.get_den();
    est.stderr_approx = Rat(isqrt(scaled), pow_int(Int(10), 9));
    est.stderr_approx.canonicalize();
    return est;
}

// ── reporting ───────────────────────────────────────────────────────────────

ojson mc_to_json(const McEstimate& e) {
    return ojson{{"schema", kSchemaVersion},
                 {"kind", "monte_carlo_estimate"},
                 {"samples", e.samples},
                 {"successes", e.successes},
                 {"estimate", j_rat(e.estimate)},
                 {"estimate_decimal", decimal_enclosure(RatInterval(e.estimate), 9).first},
                 {"stderr", j_rat(e.stderr_approx)},
                 {"seed", e.seed},
                 {"exhaustive", e.exhaustive}};
}

ojson limit_constant_to_json(const LimitConstant& lc) {
    ojson checks = ojson::array();
    for (const auto& c : lc.checks)
        checks.push_back(ojson{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return ojson{{"schema", kSchemaVersion},
                 {"kind", "limit_constant"},
                 {"P0", j_interval(lc.P0, 10)},
                 {"tail", j_interval(lc.tail, 10)},
                 {"P", j_interval(lc.P, 10)},
                 {"checks", checks},
                 {"all_ok", lc.all_ok}};
}

}  // namespace hf
