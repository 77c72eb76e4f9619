#include "hasseforge/ternary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hf {

namespace {

void require_nonzero(const std::array<Int, 3>& f) {
    for (const Int& c : f)
        if (c == 0) throw domain_error("ternary form: zero coefficient");
}

bool all_same_sign(const std::array<Int, 3>& f) {
    return (f[0] > 0 && f[1] > 0 && f[2] > 0) || (f[0] < 0 && f[1] < 0 && f[2] < 0);
}

Int gcd3(const Int& a, const Int& b, const Int& c) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

}  // namespace

SquarefreeReduction reduce_squarefree(const TernaryForm& form) {
    require_nonzero(form.f);
    SquarefreeReduction out;
    for (int i = 0; i < 3; ++i) {
        Int sq;
        out.reduced.f[i] = squarefree_part(form.f[i], sq);
        out.mult[i] = sq;
    }
    return out;
}

TernarySolution map_reduced_solution(const SquarefreeReduction& red, const TernarySolution& sol) {
    Int L;
    mpz_lcm(L.get_mpz_t(), red.mult[0].get_mpz_t(), red.mult[1].get_mpz_t());
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), red.mult[2].get_mpz_t());
    TernarySolution out;
    for (int i = 0; i < 3; ++i) out.x[i] = sol.x[i] * (L / red.mult[i]);
    Int g = gcd3(out.x[0], out.x[1], out.x[2]);
    if (g > 1)
        for (auto& v : out.x) v /= g;
    return out;
}

Int eval_form(const TernaryForm& form, const TernarySolution& sol) {
    Int v = 0;
    for (int i = 0; i < 3; ++i) v += form.f[i] * sol.x[i] * sol.x[i];
    return v;
}

bool ternary_locally_soluble(const TernaryForm& form, const Place& v) {
    require_nonzero(form.f);
    return hilbert(-form.f[0] * form.f[2], -form.f[1] * form.f[2], v) == 1;
}

std::vector<Place> ternary_relevant_places(const TernaryForm& form) {
    require_nonzero(form.f);
    std::vector<Place> places{Place::infinity()};
    std::set<Int> primes{Int(2)};
    for (const Int& c : form.f)
        for (auto& [p, e] : factorize(c)) primes.insert(p);
    for (const Int& p : primes) places.push_back(Place{false, p});
    return places;
}

bool ternary_soluble(const TernaryForm& form) {
    for (const Place& v : ternary_relevant_places(form))
        if (!ternary_locally_soluble(form, v)) return false;
    return true;
}

// ── bounded exhaustive search ───────────────────────────────────────────────

namespace {

struct Key {
    i64 maxc, x1, x2;
    bool operator<(const Key& o) const {
        if (maxc != o.maxc) return maxc < o.maxc;
        if (x1 != o.x1) return x1 < o.x1;
        return x2 < o.x2;
    }
};

struct Hit {
    bool found = false;
    Key key{};
    i64 x3 = 0;
};

inline i64 isqrt_i64(i64 v) {
    if (v < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// all primitive solutions with x1,x2 in [lo,hi) x [0,B], x3 derived; the
// minimum key found is returned (min-reduction keeps the outcome
// schedule-independent)
Hit scan_range_i64(i64 f1, i64 f2, i64 f3, i64 B, i64 lo, i64 hi) {
    Hit best;
    for (i64 x1 = lo; x1 < hi; ++x1) {
        if (best.found && x1 > best.key.maxc) break;
        i64 a = f1 * x1 * x1;
        i64 x2max = best.found ? std::min(B, best.key.maxc) : B;
        for (i64 x2 = 0; x2 <= x2max; ++x2) {
            i64 v = a + f2 * x2 * x2;
            i64 q = -v;
            if (q % f3 != 0) continue;
            q /= f3;
            if (q < 0) continue;
            i64 x3 = isqrt_i64(q);
            if (x3 * x3 != q || x3 > B) continue;
            if (x1 == 0 && x2 == 0 && x3 == 0) continue;
            i64 g = std::gcd(std::gcd(x1, x2), x3);
            if (g != 1) continue;
            Key k{std::max({x1, x2, x3}), x1, x2};
            if (!best.found || k < best.key) {
                best.found = true;
                best.key = k;
                best.x3 = x3;
            }
        }
    }
    return best;
}

Hit scan_range_mpz(const Int& f1, const Int& f2, const Int& f3, const Int& B, const Int& lo,
                   const Int& hi, Int& out_x1, Int& out_x2, Int& out_x3, Int& out_max) {
    bool found = false;
    Int bx1, bx2, bx3, bmax;
    for (Int x1 = lo; x1 < hi; ++x1) {
        if (found && x1 > bmax) break;
        Int a = f1 * x1 * x1;
        Int x2max = found ? std::min(B, bmax) : B;
        for (Int x2 = 0; x2 <= x2max; ++x2) {
            Int v = a + f2 * x2 * x2;
            Int q = -v;
            if (!mpz_divisible_p(q.get_mpz_t(), f3.get_mpz_t())) continue;
            q /= f3;
            if (q < 0) continue;
            if (!is_square(q)) continue;
            Int x3 = isqrt(q);
            if (x3 > B) continue;
            if (x1 == 0 && x2 == 0 && x3 == 0) continue;
            if (gcd3(x1, x2, x3) != 1) continue;
            Int mx = std::max({x1, x2, x3});
            bool better = !found || mx < bmax || (mx == bmax && (x1 < bx1 || (x1 == bx1 && x2 < bx2)));
            if (better) {
                found = true;
                bx1 = x1;
                bx2 = x2;
                bx3 = x3;
                bmax = mx;
            }
        }
    }
    if (found) {
        out_x1 = bx1;
        out_x2 = bx2;
        out_x3 = bx3;
        out_max = bmax;
    }
    Hit h;
    h.found = found;
    return h;
}

Place first_failing_place(const TernaryForm& form) {
    for (const Place& v : ternary_relevant_places(form))
        if (!ternary_locally_soluble(form, v)) return v;
    throw internal_error("ternary: exhaustive search empty but no local obstruction");
}

}  // namespace

TernarySolveResult ternary_solve(const TernaryForm& form, int threads) {
    require_nonzero(form.f);
    TernarySolveResult res;
    Int maxf = std::max({abs(form.f[0]), abs(form.f[1]), abs(form.f[2])});
    res.bound = 40 * maxf;
    if (all_same_sign(form.f)) {
        res.soluble = false;
        res.witness = Place::infinity();
        return res;
    }

    const Int& B = res.bound;
    // 3*|f|*B^2 must fit in i64 for the fast kernel
    bool fits = fits_i64(3 * maxf * B * B + 1) && fits_i64(B);
    if (fits) {
        i64 f1 = to_i64(form.f[0]), f2 = to_i64(form.f[1]), f3 = to_i64(form.f[2]);
        i64 b = to_i64(B);
        Hit best;
#ifdef _OPENMP
        int T = threads > 0 ? threads : omp_get_max_threads();
        if (b >= 4000 && T > 1) {
            std::vector<Hit> hits(static_cast<size_t>(T));
#pragma omp parallel num_threads(T)
            {
                int id = omp_get_thread_num();
                i64 chunk = (b + 1 + T - 1) / T;
                i64 lo = id * chunk, hi = std::min<i64>(b + 1, lo + chunk);
                if (lo <= b) hits[static_cast<size_t>(id)] = scan_range_i64(f1, f2, f3, b, lo, hi);
            }
            for (const Hit& h : hits)
                if (h.found && (!best.found || h.key < best.key)) best = h;
        } else
#endif
        {
            (void)threads;
            best = scan_range_i64(f1, f2, f3, b, 0, b + 1);
        }
        if (best.found) {
            res.soluble = true;
            res.sol.x = {Int(best.key.x1), Int(best.key.x2), Int(best.x3)};
            return res;
        }
    } else {
        Int x1, x2, x3, mx;
        Hit h = scan_range_mpz(form.f[0], form.f[1], form.f[2], B, Int(0), B + 1, x1, x2, x3, mx);
        if (h.found) {
            res.soluble = true;
            res.sol.x = {x1, x2, x3};
            return res;
        }
    }
    res.soluble = false;
    res.witness = first_failing_place(form);
    return res;
}

// ── quaternary forms ────────────────────────────────────────────────────────

namespace {

bool is_padic_square(const Int& n, const Int& p) {
    Int u;
    unsigned v = valuation(n, p, u);
    if (v & 1) return false;
    if (p == 2) {
        Int m = ((u % 8) + 8) % 8;
        return m == 1;
    }
    return jacobi(u, p) == 1;
}

}  // namespace

bool quaternary_locally_isotropic(const QuaternaryForm& form, const Int& p) {
    for (const Int& c : form.g)
        if (c == 0) throw domain_error("quaternary form: zero coefficient");
    if (!is_prime(p)) throw domain_error("quaternary isotropy: p must be prime");
    Int d = form.g[0] * form.g[1] * form.g[2] * form.g[3];
    if (!is_padic_square(d, p)) return true;
    int eps = 1;
    Place v{false, p};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) eps *= hilbert(form.g[i], form.g[j], v);
    return eps == hilbert(Int(-1), Int(-1), v);
}

QuaternarySearchResult quaternary_bounded_search(const QuaternaryForm& form, const Int& radius,
                                                 int threads) {
    (void)threads;
    for (const Int& c : form.g)
        if (c == 0) throw domain_error("quaternary form: zero coefficient");
    QuaternarySearchResult res;
    Int maxg = 0;
    for (const Int& c : form.g) maxg = std::max(maxg, Int(abs(c)));
    if (!fits_i64(4 * maxg * radius * radius + 1) || !fits_i64(radius)) {
        throw domain_error("quaternary search: radius too large for the fast kernel");
    }
    i64 B = to_i64(radius);
    i64 g0 = to_i64(form.g[0]), g1 = to_i64(form.g[1]), g2 = to_i64(form.g[2]),
        g3 = to_i64(form.g[3]);
    bool found = false;
    i64 bx0 = 0, bx1 = 0, bx2 = 0, bx3 = 0, bmax = 0;
    for (i64 x0 = 0; x0 <= B; ++x0) {
        if (found && x0 > bmax) break;
        i64 a0 = g0 * x0 * x0;
        i64 cap1 = found ? std::min(B, bmax) : B;
        for (i64 x1 = 0; x1 <= cap1; ++x1) {
            i64 a1 = a0 + g1 * x1 * x1;
            i64 cap2 = found ? std::min(B, bmax) : B;
            for (i64 x2 = 0; x2 <= cap2; ++x2) {
                i64 v = a1 + g2 * x2 * x2;
                i64 q = -v;
                if (q % g3 != 0) continue;
                q /= g3;
                if (q < 0) continue;
                i64 x3 = isqrt_i64(q);
                if (x3 * x3 != q || x3 > B) continue;
                if (x0 == 0 && x1 == 0 && x2 == 0 && x3 == 0) continue;
                i64 g = std::gcd(std::gcd(x0, x1), std::gcd(x2, x3));
                if (g != 1) continue;
                i64 mx = std::max({x0, x1, x2, x3});
                bool better = !found || mx < bmax ||
                              (mx == bmax && std::array<i64, 3>{x0, x1, x2} <
                                                 std::array<i64, 3>{bx0, bx1, bx2});
                if (better) {
                    found = true;
                    bx0 = x0;
                    bx1 = x1;
                    bx2 = x2;
                    bx3 = x3;
                    bmax = mx;
                }
            }
        }
    }
    if (found) {
        res.found = true;
        res.x = {Int(bx0), Int(bx1), Int(bx2), Int(bx3)};
    }
    return res;
}

}  // namespace hf
