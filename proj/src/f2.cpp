#include "hasseforge/f2.hpp"

namespace hf {

F2System build_cross_block_system(int n1, int n2, int n3,
                                  const std::vector<int>& lambda_tilde_flat) {
    if (n1 < 1 || n2 < 1 || n3 < 0) throw domain_error("f2 system: need n1,n2 >= 1, n3 >= 0");
    int n = n1 + n2 + n3;
    if (static_cast<int>(lambda_tilde_flat.size()) != n)
        throw domain_error("f2 system: lambda size mismatch");

    auto block_of = [&](int flat) { return flat < n1 ? 0 : (flat < n1 + n2 ? 1 : 2); };

    F2System sys;
    sys.block_sizes = {n1, n2, n3};
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (block_of(u) != block_of(v)) sys.vars.emplace_back(u, v);
    if (sys.vars.size() > 64) throw domain_error("f2 system: too many variables");

    sys.rows.assign(n, 0);
    sys.rhs = lambda_tilde_flat;
    for (size_t k = 0; k < sys.vars.size(); ++k) {
        sys.rows[sys.vars[k].first] |= u64(1) << k;
        sys.rows[sys.vars[k].second] |= u64(1) << k;
    }
    for (int& b : sys.rhs) b &= 1;
    return sys;
}

namespace {

struct Elim {
    std::vector<u64> rows;
    std::vector<int> rhs;
    std::vector<int> pivot_col;  // per reduced row
    bool consistent = true;
};

Elim eliminate(const F2System& sys) {
    Elim e;
    e.rows = sys.rows;
    e.rhs = sys.rhs;
    size_t nvars = sys.vars.size();
    size_t rank = 0;
    for (size_t col = 0; col < nvars && rank < e.rows.size(); ++col) {
        u64 bit = u64(1) << col;
        size_t piv = rank;
        while (piv < e.rows.size() && !(e.rows[piv] & bit)) ++piv;
        if (piv == e.rows.size()) continue;
        std::swap(e.rows[rank], e.rows[piv]);
        std::swap(e.rhs[rank], e.rhs[piv]);
        for (size_t r = 0; r < e.rows.size(); ++r) {
            if (r != rank && (e.rows[r] & bit)) {
                e.rows[r] ^= e.rows[rank];
                e.rhs[r] ^= e.rhs[rank];
            }
        }
        e.pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    for (size_t r = rank; r < e.rows.size(); ++r)
        if (e.rhs[r]) e.consistent = false;
    return e;
}

}  // namespace

int f2_rank(const F2System& sys) {
    return static_cast<int>(eliminate(sys).pivot_col.size());
}

std::optional<std::vector<int>> f2_solve_canonical(const F2System& sys) {
    Elim e = eliminate(sys);
    if (!e.consistent) return std::nullopt;
    std::vector<int> x(sys.vars.size(), 0);
    for (size_t r = 0; r < e.pivot_col.size(); ++r) x[e.pivot_col[r]] = e.rhs[r];
    return x;
}

}  // namespace hf
