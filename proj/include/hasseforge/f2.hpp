#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hasseforge/base.hpp"

namespace hf {

// The linear system over F_2 tying cross-block Legendre sign bits to the
// lambda-tilde vector: one equation per flattened polynomial index, one
// variable per unordered cross-block pair, listed lexicographically.
struct F2System {
    std::array<int, 3> block_sizes{};                 // n1, n2, n3
    std::vector<std::pair<int, int>> vars;            // flat index pairs (u,v), u < v
    std::vector<u64> rows;                            // bit masks over vars (<= 64 vars)
    std::vector<int> rhs;

    int n() const { return static_cast<int>(rows.size()); }
};

F2System build_cross_block_system(int n1, int n2, int n3,
                                  const std::vector<int>& lambda_tilde_flat);

int f2_rank(const F2System& sys);

// particular solution with all free variables set to zero (variables
// processed in their listed order); nullopt iff inconsistent
std::optional<std::vector<int>> f2_solve_canonical(const F2System& sys);

}  // namespace hf
