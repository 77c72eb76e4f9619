#pragma once

#include <vector>

#include "hasseforge/intpoly.hpp"

namespace hf {

// ── Schinzel condition ──────────────────────────────────────────────────────
struct SchinzelCheck {
    bool ok = true;
    enum Reason { none, nonpositive_leading, vanishes_mod_ell } reason = none;
    int poly_index = -1;  // offending polynomial for nonpositive_leading
    Int ell{0};           // witness prime for vanishes_mod_ell
};

// yes iff all leading coefficients are positive and no prime ell makes the
// product vanish identically on F_ell; constant members are a domain error
SchinzelCheck is_schinzel(const std::vector<IntPoly>& tuple);

// ── densities of Schinzel tuples mod ell ────────────────────────────────────
inline constexpr u64 kDefaultTupleBudget = u64(1) << 30;

// exact count of tuples (P_1..P_n) over F_ell with deg P_i <= d_i whose
// product has a nonzero value somewhere on F_ell, over ell^(n+sum d_i);
// value-table kernel, OpenMP over the first polynomial's coefficient prefix
Rat delta_exact(u64 ell, const std::vector<unsigned>& degrees,
                u64 budget = kDefaultTupleBudget, int threads = 0);

// reference implementation: plain odometer over all coefficient tuples with
// Horner evaluation per point; kept for cross-checks and the benchmark
Rat delta_exact_serial(u64 ell, const std::vector<unsigned>& degrees,
                       u64 budget = kDefaultTupleBudget);

// prod_i (1 - ell^-(d_i+1)), valid for ell > sum d_i
Rat delta_closed_large(u64 ell, const std::vector<unsigned>& degrees);

// 1 - (1 - (1-1/ell)^n)^ell, valid for ell <= 1 + min d_i
Rat delta_closed_small(u64 ell, unsigned n);

// max(0, (1-ell^-(1+d1))(1-ell^-(1+d2)) - 2^ell/ell^ell)
Rat delta2_lower(u64 ell, unsigned d1, unsigned d2);

}  // namespace hf
