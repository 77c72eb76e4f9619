#pragma once

#include <array>
#include <vector>

#include "hasseforge/intmath.hpp"

namespace hf {

struct TernaryForm {
    std::array<Int, 3> f;
};

struct QuaternaryForm {
    std::array<Int, 4> g;
};

struct TernarySolution {
    std::array<Int, 3> x;
};

// f_i = reduced_i * mult_i^2; map_reduced_solution turns a solution of the
// reduced form into a primitive solution of the original
struct SquarefreeReduction {
    TernaryForm reduced;
    std::array<Int, 3> mult;
};
SquarefreeReduction reduce_squarefree(const TernaryForm& form);
TernarySolution map_reduced_solution(const SquarefreeReduction& red, const TernarySolution& sol);

Int eval_form(const TernaryForm& form, const TernarySolution& sol);

// nontrivial zero over the completion at v, via (-f1 f3, -f2 f3)_v
bool ternary_locally_soluble(const TernaryForm& form, const Place& v);

// infinity, 2 and the odd primes dividing f1 f2 f3 (good reduction elsewhere)
std::vector<Place> ternary_relevant_places(const TernaryForm& form);
bool ternary_soluble(const TernaryForm& form);

struct TernarySolveResult {
    bool soluble = false;
    TernarySolution sol{};  // primitive, nonnegative, max coordinate <= bound
    Place witness;          // smallest failing place when insoluble
    Int bound{0};           // 40 * max|f_i|, the complete search radius
};

// exhaustive search within the Cassels radius; first solution under the
// lexicographic order on (max coordinate, x1, x2)
TernarySolveResult ternary_solve(const TernaryForm& form, int threads = 0);

bool quaternary_locally_isotropic(const QuaternaryForm& form, const Int& p);

struct QuaternarySearchResult {
    bool found = false;
    std::array<Int, 4> x{};
};

// bounded primitive-solution search, first hit under lexicographic
// (max coordinate, x0, x1, x2); no completeness guarantee is attached
QuaternarySearchResult quaternary_bounded_search(const QuaternaryForm& form, const Int& radius,
                                                 int threads = 0);

}  // namespace hf
