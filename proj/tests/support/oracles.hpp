#pragma once

// Test-only oracles, deliberately independent of the production code paths:
//  - Sylvester determinant resultant (Bareiss elimination)
//  - p-adic isotropy of diagonal forms by counting primitive solutions mod p^k
//  - a mechanical residue search for the bundle P(t)(x0^2+x1^2)+x2^2-2x3^2

#include <vector>

#include "hasseforge/intpoly.hpp"

namespace hf::oracle {

inline Int sylvester_resultant(const IntPoly& P, const IntPoly& Q) {
    int m = P.degree(), n = Q.degree();
    if (m == 0 && n == 0) return Int(1);
    if (n == 0) return pow_int(Q.coeff(0), static_cast<unsigned long>(m));
    if (m == 0) return pow_int(P.coeff(0), static_cast<unsigned long>(n));
    int size = m + n;
    std::vector<std::vector<Int>> A(size, std::vector<Int>(size, Int(0)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) A[r][r + k] = P.coeff(static_cast<size_t>(m - k));
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) A[n + r][r + k] = Q.coeff(static_cast<size_t>(n - k));
    // Bareiss fraction-free elimination
    Int denom = 1;
    int sign = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (A[k][k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < size; ++r)
                if (A[r][k] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return Int(0);
            std::swap(A[k], A[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                Int num = A[i][j] * A[k][k] - A[i][k] * A[k][j];
                A[i][j] = num / denom;  // exact by Bareiss
            }
            A[i][k] = 0;
        }
        denom = A[k][k];
    }
    return sign * A[size - 1][size - 1];
}

// counts solutions of sum g_i x_i^2 = 0 over (Z/p^k)^vars via histograms of
// g_i x^2 and cyclic convolutions
inline u64 count_form_solutions_mod(const std::vector<long>& g, long p, int k) {
    u64 m = 1;
    for (int i = 0; i < k; ++i) m *= static_cast<u64>(p);
    auto scaled_square_hist = [&](long gi) {
        std::vector<u64> h(m, 0);
        long gm = ((gi % static_cast<long>(m)) + static_cast<long>(m)) % static_cast<long>(m);
        for (u64 x = 0; x < m; ++x) {
            u64 sq = (x * x) % m;
            h[(sq * static_cast<u64>(gm)) % m] += 1;
        }
        return h;
    };
    auto convolve = [&](const std::vector<u64>& a, const std::vector<u64>& b) {
        std::vector<u64> c(m, 0);
        for (u64 i = 0; i < m; ++i) {
            if (!a[i]) continue;
            for (u64 j = 0; j < m; ++j) c[(i + j) % m] += a[i] * b[j];
        }
        return c;
    };
    std::vector<u64> acc = scaled_square_hist(g[0]);
    for (size_t i = 1; i + 1 < g.size(); ++i) acc = convolve(acc, scaled_square_hist(g[i]));
    std::vector<u64> last = scaled_square_hist(g.back());
    u64 total = 0;
    for (u64 c = 0; c < m; ++c) total += acc[c] * last[(m - c) % m];
    return total;
}

// primitive solutions mod p^k exist
inline bool padic_isotropic_oracle(const std::vector<long>& g, long p, int k) {
    u64 nk = count_form_solutions_mod(g, p, k);
    u64 pv = 1;
    for (size_t i = 0; i < g.size(); ++i) pv *= static_cast<u64>(p);
    u64 imprimitive;
    if (k >= 3) {
        imprimitive = pv * count_form_solutions_mod(g, p, k - 2);
    } else if (k == 2) {
        imprimitive = pv;  // x = p*y, y free mod p
    } else {
        imprimitive = 1;  // only the zero vector
    }
    return nk > imprimitive;
}

// primitive residue search mod p^2 for p(x0^2+x1^2) + x2^2 - 2 x3^2 = 0,
// odd p; pure enumeration. The quadratic part in (x2,x3) is unimodular, so
// solvability mod p^2 with a primitive vector already decides over Z_p.
inline bool q2_residue_search(long p) {
    // representable sums of two squares mod p, with and without the
    // all-divisible case
    std::vector<u8> any(static_cast<size_t>(p), 0), unit(static_cast<size_t>(p), 0);
    for (long x0 = 0; x0 < p; ++x0)
        for (long x1 = 0; x1 < p; ++x1) {
            long c = (x0 * x0 + x1 * x1) % p;
            any[static_cast<size_t>(c)] = 1;
            if (x0 || x1) unit[static_cast<size_t>(c)] = 1;
        }
    // case (x2,x3) = (0,0) mod p: x2 = p d2, x3 = p d3; need a primitive
    // (x0,x1) with x0^2+x1^2 = 0 mod p
    if (unit[0]) return true;
    // case (x2,x3) nonzero mod p: need x2^2 - 2 x3^2 = 0 mod p, then match
    // the second digit against a sum of two squares
    for (long c2 = 0; c2 < p; ++c2) {
        for (long c3 = 0; c3 < p; ++c3) {
            if (c2 == 0 && c3 == 0) continue;
            long w = ((c2 * c2 - 2 * c3 * c3) % p + p) % p;
            if (w != 0) continue;
            long base = ((c2 * c2 - 2 * c3 * c3) / p % p + p) % p;
            for (long d2 = 0; d2 < p; ++d2)
                for (long d3 = 0; d3 < p; ++d3) {
                    long w0 = ((base + 2 * c2 * d2 - 4 * c3 * d3) % p + p) % p;
                    if (any[static_cast<size_t>((p - w0) % p)]) return true;
                }
        }
    }
    return false;
}

}  // namespace hf::oracle
