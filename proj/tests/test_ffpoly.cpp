#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hasseforge/ffpoly.hpp"

using namespace hf;

namespace {
IntPoly P(const std::string& s) { return IntPoly::parse(s); }
}

TEST_CASE("schinzel condition") {
    auto r1 = is_schinzel({P("t"), P("t+1")});
    CHECK_FALSE(r1.ok);
    CHECK(r1.reason == SchinzelCheck::vanishes_mod_ell);
    CHECK(r1.ell == 2);

    CHECK(is_schinzel({P("t+1"), P("t+3")}).ok);

    auto r2 = is_schinzel({P("2t+2")});
    CHECK_FALSE(r2.ok);
    CHECK(r2.ell == 2);

    auto r3 = is_schinzel({P("-t+3"), P("t+1")});
    CHECK_FALSE(r3.ok);
    CHECK(r3.reason == SchinzelCheck::nonpositive_leading);
    CHECK(r3.poly_index == 0);

    CHECK_THROWS_AS(is_schinzel({P("5")}), domain_error);

    // t(t+2) is odd at odd integers, so 2 is not a witness
    CHECK(is_schinzel({P("t"), P("t+2")}).ok);
    // product covering all residues mod 3
    auto r4 = is_schinzel({P("t"), P("t+1"), P("t+2"), P("t+3")});
    CHECK_FALSE(r4.ok);
    CHECK(r4.ell == 2);
    auto r5 = is_schinzel({P("t^2+1"), P("t+3")});
    CHECK(r5.ok);
    // large-prime content witness
    auto r6 = is_schinzel({P("101t+101"), P("t+1")});
    CHECK_FALSE(r6.ok);
    CHECK(r6.ell == 101);
}

TEST_CASE("delta_exact matches the closed forms") {
    CHECK(delta_exact(2, {1, 1}) == Rat(7, 16));
    CHECK(delta_exact(3, {2, 2}) == Rat(604, 729));
    CHECK(delta_exact(5, {1, 1}) == Rat(576, 625));
    CHECK(delta_closed_small(2, 2) == Rat(7, 16));
    CHECK(delta_closed_small(3, 2) == Rat(604, 729));
    CHECK(delta_closed_small(2, 1) == Rat(3, 4));
    CHECK(delta_closed_large(5, {1, 1}) == Rat(576, 625));
    CHECK(delta_closed_large(7, {1}) == Rat(48, 49));
    CHECK_THROWS_AS(delta_closed_large(3, {2, 2}), domain_error);
    CHECK_THROWS_AS(delta_exact(4, {1}), domain_error);
    CHECK_THROWS_AS(delta_exact(2, {1, 1}, 8), budget_error);
}

TEST_CASE("delta_exact equals the serial reference") {
    for (u64 ell : {2u, 3u, 5u}) {
        for (std::vector<unsigned> d : {std::vector<unsigned>{1}, {2}, {1, 1}, {1, 2}}) {
            unsigned total = 0;
            for (unsigned x : d) total += x + 1;
            if (pow_int(Int(ell), total) > 200000) continue;
            CHECK(delta_exact(ell, d) == delta_exact_serial(ell, d));
        }
    }
}

TEST_CASE("delta_exact large-ell agreement") {
    for (u64 ell : {5u, 7u, 11u, 13u}) {
        for (std::vector<unsigned> d :
             {std::vector<unsigned>{1}, {1, 1}, {2, 1}}) {
            unsigned sum = 0;
            for (unsigned x : d) sum += x;
            if (ell <= sum) continue;
            CHECK(delta_exact(ell, d) == delta_closed_large(ell, d));
        }
    }
}

TEST_CASE("delta_exact small-ell agreement") {
    CHECK(delta_exact(2, {1}) == delta_closed_small(2, 1));
    CHECK(delta_exact(2, {2, 3}) == delta_closed_small(2, 2));
    CHECK(delta_exact(3, {2, 2}) == delta_closed_small(3, 2));
    CHECK(delta_exact(3, {3, 2, 2}) == delta_closed_small(3, 3));
    CHECK(delta_exact(2, {1, 1, 1}) == delta_closed_small(2, 3));
}

TEST_CASE("delta at 2 is degree independent") {
    for (unsigned d1 : {1u, 2u, 3u})
        for (unsigned d2 : {1u, 2u, 3u})
            CHECK(delta_exact(2, {d1, d2}) == Rat(7, 16));
}

TEST_CASE("delta2_lower") {
    CHECK(delta2_lower(5, 2, 2) == (1 - Rat(1, 125)) * (1 - Rat(1, 125)) - Rat(32, 3125));
    // clamped at zero when the correction dominates
    CHECK(delta2_lower(2, 1, 1) == Rat(0));
    // lower bound against enumeration
    for (u64 ell : {3u, 5u}) {
        for (unsigned d1 : {1u, 2u})
            for (unsigned d2 : {1u, 2u})
                CHECK(delta2_lower(ell, d1, d2) <= delta_exact(ell, {d1, d2}));
    }
    //difference with the large-ell product is exactly the correction term
    CHECK(delta_closed_large(13, {1, 1}) - delta2_lower(13, 1, 1) ==
          rat_pow(Rat(2, 13), 13));
}
