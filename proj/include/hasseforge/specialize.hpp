#pragma once

#include <map>
#include <vector>

#include "hasseforge/ffpoly.hpp"
#include "hasseforge/report.hpp"

namespace hf {

// Prescribed Legendre signs: targets[(i,j)] with i < j is the required value
// of the symbol (P_i(m) / P_j(m)). Must be total on the index pairs.
struct SymbolTargets {
    std::map<std::pair<int, int>, int> signs;

    static SymbolTargets all_plus(int n);
    int at(int i, int j) const;
    void set(int i, int j, int sign);
};

struct SearchSpec {
    std::vector<IntPoly> tuple;
    Int M{1};
    Int m0{0};           // residue in [0, M)
    SymbolTargets targets;
    Int m_max{0};        // 0 = default scale
    Rat epsilon{1, 2};   // used by the size-bound records only

    int n() const { return static_cast<int>(tuple.size()); }
};

Int default_m_max(const SearchSpec& spec);

struct BoundRecord {
    std::string name;
    Rat lhs{0};
    RatInterval rhs;
    int verdict = 0;  // +1 satisfied, -1 violated, 0 undecided at max precision
};

struct SymbolRecord {
    int i, j;
    int target;
    int realized;
};

struct Certificate {
    Int m;
    std::vector<Int> values;           // P_i(m), distinct primes
    std::vector<SymbolRecord> symbols;
    BoundRecord min_value_bound;       // min P_i(m) > |P| (log|P|)^(eps/2)
    BoundRecord scale_bound;           // m <= (log|P|)^(n+eps)
    bool primality_deterministic = true;
};

struct ScanStats {
    u64 candidates = 0;
    u64 rejected_not_prime = 0;
    u64 rejected_duplicate = 0;
    u64 rejected_symbol = 0;
    u64 rejected_even_modulus = 0;  // a value of 2 in a symbol-modulus slot
};

struct SearchOutcome {
    bool found = false;
    Certificate cert;       // valid when found
    ScanStats stats;
    Int scanned_to{0};      // last candidate m examined
};

// smallest m in [start, m_max] with m = m0 (mod M), all values distinct
// primes and all prescribed symbols realized; size-bound records are
// evaluated but never gate the result
SearchOutcome search(const SearchSpec& spec, const Int& start = Int(1));

bool verify(const Certificate& cert, const SearchSpec& spec);

ojson certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const ojson& j);
ojson spec_to_json(const SearchSpec& spec);
SearchSpec spec_from_json(const ojson& j);

}  // namespace hf
