#pragma once

#include <map>
#include <optional>
#include <variant>

#include "hasseforge/f2.hpp"
#include "hasseforge/specialize.hpp"
#include "hasseforge/ternary.hpp"

namespace hf {

// ── conic bundles:  a1 prod P_1j x1^2 + a2 prod P_2k x2^2 + a3 prod P_3l x3^2 = 0
struct ConicBundleProblem {
    std::array<Int, 3> a;
    std::array<std::vector<IntPoly>, 3> blocks;  // n1 > 0, n2 > 0, n3 >= 0

    std::vector<IntPoly> flattened() const;
    std::array<int, 3> block_sizes() const;
};

void validate_conic(const ConicBundleProblem& problem);

// coefficient normalization: product a1 a2 a3 squarefree; original solution
// coordinate X_i = coord_mult[i] * x_i (rational, cleared by the caller)
struct ConicNormalization {
    std::array<Int, 3> a;
    std::array<Rat, 3> coord_mult;
    Int M;                       // 8 |a1 a2 a3|
    std::vector<Int> M_primes;   // 2 and the odd primes of the product
};
ConicNormalization normalize_conic_coefficients(const std::array<Int, 3>& a);

// one admissible residue datum: m0 with unit polynomial values mod M and the
// specialized conic soluble over Q_p for every p | M
struct ConicLocalData {
    Int M;
    std::vector<Int> M_primes;
    Int m0;
    std::array<std::vector<Int>, 3> values;        // P_ij(m0)
    std::array<std::vector<int>, 3> lambda;
    std::array<std::vector<int>, 3> lambda_tilde;  // sums to 0 over F_2
};

std::vector<ConicLocalData> enumerate_local_data(const ConicBundleProblem& problem);

// bit of prod_{p|M} (value_ij, -a_i' a_i'')_p
std::array<std::vector<int>, 3> compute_lambda(const ConicLocalData& data,
                                               const std::array<Int, 3>& a);
// corrections by the symbols at 2: block 2 picks up (pi_1, p_2k)_2, block 3
// picks up (pi_1 pi_2, p_3l)_2
std::array<std::vector<int>, 3> compute_lambda_tilde(
    const std::array<std::vector<int>, 3>& lambda, const ConicLocalData& data);

// canonical solution of the cross-block system; the sign attached to the
// flat pair (u,v), u < v, prescribes the symbol (p_v / p_u); within-block
// pairs are fixed to +1; nullopt iff the lambda-tilde sum is odd
struct CrossBlockTargets {
    std::map<std::pair<int, int>, int> later_over_earlier;
};
std::optional<CrossBlockTargets> solve_targets(
    const std::array<std::vector<int>, 3>& lambda_tilde, const std::array<int, 3>& block_sizes);

// (p_u/p_v) targets for the specialization search, derived from the
// cross-block signs by quadratic reciprocity on the residues mod 4
SymbolTargets targets_for_search(const CrossBlockTargets& cross,
                                 const std::vector<Int>& residues_flat);

struct GenericityResult {
    bool in_generic_locus = true;
    std::string witness;  // names the vanishing quantity otherwise
};
GenericityResult genericity_check(const ConicBundleProblem& problem);

struct HeightBoundRecord {
    RatInterval bound;
    Int max_coordinate{0};
    int verdict = 0;  // recorded, never enforced
};

struct ConicSolution {
    std::array<Int, 3> x;
    Int t;
    Certificate cert;
    SearchSpec spec_used;
    Int m0;
    Int M;
    std::array<Int, 3> normalized_a;
    TernaryForm specialized_form;   // with normalized coefficients
    TernarySolution specialized_solution;
    Int cassels_bound;
    HeightBoundRecord height_bound;
};

struct Obstruction {
    Place place;
    std::string detail;
};

struct Exhausted {
    Int m_max;
};

struct Unsupported {
    std::string reason;
};

using ConicOutcome = std::variant<ConicSolution, Obstruction, Exhausted>;

ConicOutcome solve_conic_bundle(const ConicBundleProblem& problem, const Int& m_max = Int(0),
                                int threads = 0);

Int conic_equation_value(const ConicBundleProblem& problem, const std::array<Int, 3>& x,
                         const Int& t);

// ── quadric bundles of relative dimension 2 ────────────────────────────────
struct QuadricBundleProblem {
    std::array<Int, 4> a;
    std::vector<IntPoly> polys;
    std::array<std::vector<int>, 4> sets;  // 0-based indices into polys

    IntPoly delta() const;  // a0 a1 a2 a3 * prod over the four sets
};

void validate_quadric(const QuadricBundleProblem& problem);

enum class DeltaClass { nonsquare, square_in_base, square_over_closure_only };
DeltaClass classify_delta(const QuadricBundleProblem& problem);

// local solubility at an odd prime value p of the bundle
// P(t)(x0^2+x1^2) + x2^2 - 2 x3^2 = 0
bool q2_locally_soluble(const Int& p);

struct QuadricSolution {
    std::array<Int, 4> x;
    Int t;
    std::string route;  // direct_search | specialization | conic_reduction
    std::optional<Certificate> cert;
    std::optional<ConicSolution> conic;
    bool search_radius_heuristic = false;
};

using QuadricOutcome = std::variant<QuadricSolution, Obstruction, Exhausted, Unsupported>;

QuadricOutcome solve_quadric_bundle(const QuadricBundleProblem& problem,
                                    const Int& m_max = Int(0), int threads = 0);

// prescribed signs for the quadric specialization: index 0 of the reindexed
// tuple is a single-occurrence polynomial; doubly-occurring indices i get
// (p_0/p_i) = -prod_{p|M} (a, p_i)_p, everything else +1
SymbolTargets quadric_targets(const std::array<Int, 4>& normalized_a,
                              const std::vector<Int>& residues,  // reindexed values at m0
                              const std::vector<int>& occurrence,  // 1 or 2 per reindexed slot
                              const Int& M, const std::vector<Int>& M_primes);

Int quadric_equation_value(const QuadricBundleProblem& problem, const std::array<Int, 4>& x,
                           const Int& t);

// ── reporting ───────────────────────────────────────────────────────────────
ojson conic_outcome_to_json(const ConicBundleProblem& problem, const ConicOutcome& outcome);
ojson quadric_outcome_to_json(const QuadricBundleProblem& problem, const QuadricOutcome& outcome);

}  // namespace hf
