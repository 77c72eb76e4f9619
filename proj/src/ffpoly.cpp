#include "hasseforge/ffpoly.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hasseforge/intmath.hpp"

namespace hf {

SchinzelCheck is_schinzel(const std::vector<IntPoly>& tuple) {
    if (tuple.empty()) throw domain_error("schinzel: empty tuple");
    for (const auto& p : tuple)
        if (p.is_zero() || p.degree() < 1)
            throw domain_error("schinzel: constant polynomial");
    for (size_t i = 0; i < tuple.size(); ++i)
        if (tuple[i].lc() <= 0)
            return {false, SchinzelCheck::nonpositive_leading, static_cast<int>(i), Int(0)};

    unsigned total_deg = 0;
    for (const auto& p : tuple) total_deg += static_cast<unsigned>(p.degree());

    // ell <= total degree: exhaustive evaluation over F_ell
    for (u32 ell : primes_below(total_deg + 1)) {
        bool nonvanishing = false;
        for (u32 r = 0; r < ell && !nonvanishing; ++r) {
            bool all_nonzero = true;
            for (const auto& p : tuple) {
                if (p(Int(r)) % ell == 0) {
                    all_nonzero = false;
                    break;
                }
            }
            nonvanishing = all_nonzero;
        }
        if (!nonvanishing) return {false, SchinzelCheck::vanishes_mod_ell, -1, Int(ell)};
    }

    // beyond the total degree only content divisibility can force vanishing
    for (const auto& p : tuple) {
        Int c = content(p);
        for (u32 ell : primes_below(total_deg + 1))
            while (mpz_divisible_ui_p(c.get_mpz_t(), ell)) c /= ell;
        if (c > 1)
            return {false, SchinzelCheck::vanishes_mod_ell, -1, smallest_prime_factor(c)};
    }
    return {};
}

namespace {

struct TupleSpace {
    u64 ell;
    std::vector<unsigned> degrees;
    u64 total = 1;  // ell^(n + sum d_i)
};

TupleSpace make_space(u64 ell, const std::vector<unsigned>& degrees, u64 budget) {
    if (!is_prime(Int(ell))) throw domain_error("delta: ell must be prime");
    if (degrees.empty()) throw domain_error("delta: empty degree list");
    for (unsigned d : degrees)
        if (d < 1) throw domain_error("delta: degrees must be >= 1");
    TupleSpace s{ell, degrees, 1};
    for (unsigned d : degrees) {
        for (unsigned k = 0; k <= d; ++k) {
            if (s.total > budget / ell) throw budget_error("delta: tuple budget exceeded");
            s.total *= ell;
        }
    }
    return s;
}

// value masks for one slot: bit r set iff P(r) != 0 mod ell, for every
// coefficient vector of degree <= d in odometer order (low digit = constant)
std::vector<std::vector<u64>> slot_masks(u64 ell, unsigned d, unsigned words) {
    u64 vecs = 1;
    for (unsigned k = 0; k <= d; ++k) vecs *= ell;
    std::vector<std::vector<u64>> masks(vecs, std::vector<u64>(words, 0));
    std::vector<u64> digits(d + 1, 0);
    for (u64 idx = 0; idx < vecs; ++idx) {
        auto& m = masks[idx];
        for (u64 r = 0; r < ell; ++r) {
            u64 v = 0;
            for (size_t k = digits.size(); k-- > 0;) v = (v * r + digits[k]) % ell;
            if (v != 0) m[r / 64] |= u64(1) << (r % 64);
        }
        for (size_t k = 0; k < digits.size(); ++k) {
            if (++digits[k] < ell) break;
            digits[k] = 0;
        }
    }
    return masks;
}

u64 count_rec(const std::vector<std::vector<std::vector<u64>>>& tables, size_t slot,
              const std::vector<u64>& partial, unsigned words) {
    u64 cnt = 0;
    const auto& tab = tables[slot];
    if (slot + 1 == tables.size()) {
        for (const auto& m : tab) {
            for (unsigned w = 0; w < words; ++w) {
                if (partial[w] & m[w]) {
                    ++cnt;
                    break;
                }
            }
        }
        return cnt;
    }
    std::vector<u64> next(words);
    for (const auto& m : tab) {
        bool nonzero = false;
        for (unsigned w = 0; w < words; ++w) {
            next[w] = partial[w] & m[w];
            nonzero |= next[w] != 0;
        }
        if (nonzero) cnt += count_rec(tables, slot + 1, next, words);
    }
    return cnt;
}

}  // namespace

Rat delta_exact(u64 ell, const std::vector<unsigned>& degrees, u64 budget, int threads) {
    TupleSpace s = make_space(ell, degrees, budget);
    unsigned words = static_cast<unsigned>((ell + 63) / 64);
    std::vector<std::vector<std::vector<u64>>> tables;
    tables.reserve(degrees.size());
    for (unsigned d : degrees) tables.push_back(slot_masks(ell, d, words));

    const auto& first = tables[0];
    long n0 = static_cast<long>(first.size());
    u64 count = 0;
#ifdef _OPENMP
    int T = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(T) reduction(+ : count) schedule(static)
#endif
    for (long i = 0; i < n0; ++i) {
        bool nonzero = false;
        for (unsigned w = 0; w < words; ++w) nonzero |= first[i][w] != 0;
        if (!nonzero) continue;
        if (tables.size() == 1) {
            ++count;
        } else {
            count += count_rec(tables, 1, first[i], words);
        }
    }
    Rat r(Int(count), Int(s.total));
    r.canonicalize();
    return r;
}

Rat delta_exact_serial(u64 ell, const std::vector<unsigned>& degrees, u64 budget) {
    TupleSpace s = make_space(ell, degrees, budget);
    size_t n = degrees.size();
    std::vector<std::vector<u64>> coeffs(n);
    for (size_t i = 0; i < n; ++i) coeffs[i].assign(degrees[i] + 1, 0);
    u64 count = 0;
    for (u64 idx = 0; idx < s.total; ++idx) {
        bool good = false;
        for (u64 r = 0; r < ell && !good; ++r) {
            bool all_nonzero = true;
            for (size_t i = 0; i < n && all_nonzero; ++i) {
                u64 v = 0;
                for (size_t k = coeffs[i].size(); k-- > 0;) v = (v * r + coeffs[i][k]) % ell;
                all_nonzero = v != 0;
            }
            good = all_nonzero;
        }
        if (good) ++count;
        // odometer step across all coefficients
        for (size_t i = 0; i < n; ++i) {
            bool carry = true;
            for (size_t k = 0; k < coeffs[i].size() && carry; ++k) {
                if (++coeffs[i][k] < ell) carry = false;
                else coeffs[i][k] = 0;
            }
            if (!carry) break;
        }
    }
    Rat r(Int(count), Int(s.total));
    r.canonicalize();
    return r;
}

Rat delta_closed_large(u64 ell, const std::vector<unsigned>& degrees) {
    if (!is_prime(Int(ell))) throw domain_error("delta_closed_large: ell must be prime");
    unsigned total = 0;
    for (unsigned d : degrees) {
        if (d < 1) throw domain_error("delta_closed_large: degrees must be >= 1");
        total += d;
    }
    if (ell <= total) throw domain_error("delta_closed_large: requires ell > sum of degrees");
    Rat prod(1);
    for (unsigned d : degrees) prod *= 1 - Rat(1, pow_int(Int(ell), d + 1));
    prod.canonicalize();
    return prod;
}

Rat delta_closed_small(u64 ell, unsigned n) {
    if (!is_prime(Int(ell))) throw domain_error("delta_closed_small: ell must be prime");
    if (n < 1) throw domain_error("delta_closed_small: n >= 1 required");
    Rat inner = 1 - rat_pow(1 - Rat(1, ell), n);
    Rat r = 1 - rat_pow(inner, static_cast<unsigned long>(ell));
    r.canonicalize();
    return r;
}

Rat delta2_lower(u64 ell, unsigned d1, unsigned d2) {
    if (!is_prime(Int(ell))) throw domain_error("delta2_lower: ell must be prime");
    Rat main = (1 - Rat(1, pow_int(Int(ell), d1 + 1))) * (1 - Rat(1, pow_int(Int(ell), d2 + 1)));
    Rat corr = rat_pow(Rat(2, ell), static_cast<unsigned long>(ell));
    Rat r = main - corr;
    if (r < 0) r = 0;  // the bound can go negative for small ell; clamp
    r.canonicalize();
    return r;
}

}  // namespace hf
