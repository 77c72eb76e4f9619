#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hasseforge/ternary.hpp"
#include "support/oracles.hpp"

using namespace hf;

namespace {

TernaryForm F(long a, long b, long c) { return TernaryForm{{Int(a), Int(b), Int(c)}}; }

// independent bounded search: any primitive solution within the radius
bool brute_has_solution(long f1, long f2, long f3, long B) {
    for (long x = 0; x <= B; ++x)
        for (long y = 0; y <= B; ++y) {
            long long v = static_cast<long long>(f1) * x * x + static_cast<long long>(f2) * y * y;
            long long q = -v;
            if (q % f3 != 0) continue;
            q /= f3;
            if (q < 0) continue;
            long z = static_cast<long>(std::sqrt(static_cast<double>(q)));
            while (z > 0 && static_cast<long long>(z) * z > q) --z;
            while (static_cast<long long>(z + 1) * (z + 1) <= q) ++z;
            if (static_cast<long long>(z) * z != q || z > B) continue;
            if (x == 0 && y == 0 && z == 0) continue;
            if (std::gcd(std::gcd(x, y), static_cast<long>(z)) != 1) continue;
            return true;
        }
    return false;
}

}  // namespace

TEST_CASE("squarefree reduction") {
    auto r1 = reduce_squarefree(F(4, 9, -1));
    CHECK(r1.reduced.f == std::array<Int, 3>{1, 1, -1});
    CHECK(r1.mult == std::array<Int, 3>{2, 3, 1});
    auto r2 = reduce_squarefree(F(8, 3, -5));
    CHECK(r2.reduced.f == std::array<Int, 3>{2, 3, -5});
    auto r3 = reduce_squarefree(F(1, 1, -2));
    CHECK(r3.reduced.f == std::array<Int, 3>{1, 1, -2});
    CHECK_THROWS_AS(reduce_squarefree(F(0, 1, -1)), domain_error);

    // mapped solutions satisfy the original form
    TernarySolution sol{{Int(1), Int(0), Int(1)}};  // solves x^2 - z^2 = 0 for (1,1,-1)
    TernarySolution mapped = map_reduced_solution(r1, sol);
    CHECK(eval_form(F(4, 9, -1), mapped) == 0);
    Int g;
    mpz_gcd(g.get_mpz_t(), mapped.x[0].get_mpz_t(), mapped.x[2].get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mapped.x[1].get_mpz_t());
    CHECK(g == 1);
}

TEST_CASE("local solubility") {
    for (const Place& v : ternary_relevant_places(F(1, 1, -2)))
        CHECK(ternary_locally_soluble(F(1, 1, -2), v));
    CHECK_FALSE(ternary_locally_soluble(F(1, 1, -3), Place::finite(Int(3))));
    CHECK_FALSE(ternary_locally_soluble(F(3, 5, -1), Place::finite(Int(5))));
    CHECK_FALSE(ternary_locally_soluble(F(1, 1, 1), Place::infinity()));

    // invariance under square scaling and permutation
    CHECK(ternary_locally_soluble(F(4 * 3, 5, -1), Place::finite(Int(5))) ==
          ternary_locally_soluble(F(3, 5, -1), Place::finite(Int(5))));
    CHECK(ternary_locally_soluble(F(5, -1, 3), Place::finite(Int(5))) ==
          ternary_locally_soluble(F(3, 5, -1), Place::finite(Int(5))));
}

TEST_CASE("local solubility against residue counting") {
    for (long f1 : {1, 2, 3, -5, 7})
        for (long f2 : {1, -1, 3, 10})
            for (long f3 : {-1, -2, -3, 5}) {
                for (long p : {2L, 3L, 5L, 7L}) {
                    int k = p == 2 ? 6 : 3;
                    bool expect = oracle::padic_isotropic_oracle({f1, f2, f3}, p, k);
                    CHECK(ternary_locally_soluble(F(f1, f2, f3), Place::finite(Int(p))) == expect);
                }
            }
}

TEST_CASE("global solubility") {
    CHECK(ternary_soluble(F(1, 1, -2)));
    CHECK_FALSE(ternary_soluble(F(1, 1, -3)));
    CHECK(ternary_soluble(F(5, 11, -1)));
    // the number of failing places is even
    for (long f1 : {1, 2, 3, 5})
        for (long f2 : {1, 6, 7})
            for (long f3 : {-1, -2, -10, -15}) {
                int failures = 0;
                for (const Place& v : ternary_relevant_places(F(f1, f2, f3)))
                    failures += !ternary_locally_soluble(F(f1, f2, f3), v);
                CHECK(failures % 2 == 0);
            }
}

TEST_CASE("ternary_solve examples") {
    auto r1 = ternary_solve(F(1, 1, -2));
    REQUIRE(r1.soluble);
    CHECK(r1.sol.x == std::array<Int, 3>{1, 1, 1});

    // first hit in the (max, x1, x2) order; 5+11 = 16
    auto r2 = ternary_solve(F(5, 11, -1));
    REQUIRE(r2.soluble);
    CHECK(r2.sol.x == std::array<Int, 3>{1, 1, 4});
    CHECK(r2.bound == 440);

    auto r3 = ternary_solve(F(1, 1, -3));
    CHECK_FALSE(r3.soluble);
    CHECK(r3.witness == Place::finite(Int(3)));

    auto r4 = ternary_solve(F(2, 3, 5));
    CHECK_FALSE(r4.soluble);
    CHECK(r4.witness == Place::infinity());

    // determinism
    auto r5 = ternary_solve(F(5, 11, -1));
    CHECK(r5.sol.x == r2.sol.x);
}

TEST_CASE("local-global on a small grid") {
    for (long f1 : {1, 2, 3, 5, 6, 7})
        for (long f2 : {1, 2, 5, 10})
            for (long f3 : {-1, -3, -7, -14}) {
                TernaryForm form = F(f1, f2, f3);
                long maxf = std::max({std::abs(f1), std::abs(f2), std::abs(f3)});
                bool brute = brute_has_solution(f1, f2, f3, 40 * maxf);
                CHECK(ternary_soluble(form) == brute);
                auto r = ternary_solve(form);
                CHECK(r.soluble == brute);
                if (r.soluble) {
                    CHECK(eval_form(form, r.sol) == 0);
                    Int mx = std::max({r.sol.x[0], r.sol.x[1], r.sol.x[2]});
                    CHECK(mx <= r.bound);
                }
            }
}

TEST_CASE("quaternary isotropy") {
    auto Q = [](long a, long b, long c, long d) {
        return QuaternaryForm{{Int(a), Int(b), Int(c), Int(d)}};
    };
    CHECK_FALSE(quaternary_locally_isotropic(Q(1, 1, 1, 1), Int(2)));
    CHECK(quaternary_locally_isotropic(Q(1, 1, 1, -7), Int(7)));
    for (long p : {2, 3, 5, 7, 11})
        CHECK(quaternary_locally_isotropic(Q(1, 1, -1, -1), Int(p)));

    // against residue counting on a small grid
    for (long g0 : {1, 2, -3})
        for (long g1 : {1, 5, -2})
            for (long g2 : {1, -1, 7})
                for (long g3 : {-1, 3, -6})
                    for (long p : {2L, 3L, 5L, 7L}) {
                        int k = p == 2 ? 6 : 3;
                        bool expect = oracle::padic_isotropic_oracle({g0, g1, g2, g3}, p, k);
                        CHECK(quaternary_locally_isotropic(Q(g0, g1, g2, g3), Int(p)) == expect);
                    }
}

TEST_CASE("quaternary bounded search") {
    auto r = quaternary_bounded_search(QuaternaryForm{{Int(1), Int(1), Int(1), Int(-1)}}, Int(40));
    REQUIRE(r.found);
    CHECK(r.x == std::array<Int, 4>{0, 0, 1, 1});
    auto none = quaternary_bounded_search(QuaternaryForm{{Int(1), Int(1), Int(1), Int(1)}}, Int(10));
    CHECK_FALSE(none.found);
}
