#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hasseforge/intpoly.hpp"
#include "support/oracles.hpp"

using namespace hf;

namespace {
IntPoly P(const std::string& s) { return IntPoly::parse(s); }
}

TEST_CASE("parsing and printing") {
    CHECK(P("t^2+3t+1").coeffs() == std::vector<Int>{1, 3, 1});
    CHECK(P("1,3,1") == P("t^2+3t+1"));
    CHECK(P("-5").coeffs() == std::vector<Int>{-5});
    CHECK(P("t").coeffs() == std::vector<Int>{0, 1});
    CHECK(P("2t+2").coeffs() == std::vector<Int>{2, 2});
    CHECK(P("-t^3+4").coeffs() == std::vector<Int>{4, 0, 0, -1});
    CHECK(P("3*t^2 - 2*t + 17").str() == "3t^2-2t+17");
    CHECK_THROWS_AS(P(""), domain_error);
    CHECK(P("0,0").is_zero());
}

TEST_CASE("evaluation and arithmetic") {
    IntPoly p = P("t^2-3t+2");
    CHECK(p(Int(0)) == 2);
    CHECK(p(Int(1)) == 0);
    CHECK(p(Int(-2)) == 12);
    CHECK(p.derivative() == P("2t-3"));
    CHECK((P("t+1") * P("t-1")) == P("t^2-1"));
    CHECK((P("t+1") + P("t-1")) == P("2t"));
}

TEST_CASE("height and content") {
    CHECK(height(P("3t^2-7t+1")) == 7);
    CHECK(height(P("t")) == 1);
    CHECK(height(P("-5")) == 5);
    CHECK_THROWS_AS(height(IntPoly()), domain_error);
    CHECK(content(P("6t^2-9t+3")) == 3);
    CHECK(primitive_part(P("6t^2-9t+3")) == P("2t^2-3t+1"));
}

TEST_CASE("resultant examples") {
    CHECK(resultant(P("t-2"), P("t-5")) == -3);
    CHECK(resultant(P("t^2+1"), P("t^2+1")) == 0);
    CHECK(resultant(P("2t+1"), P("3t+1")) == -1);
    CHECK_THROWS_AS(resultant(IntPoly(), P("t")), domain_error);
    // constants
    CHECK(resultant(P("t^3-2t+7"), P("4")) == 64);
}

TEST_CASE("resultant against Sylvester determinant") {
    u64 counter = 0;
    for (u64 i = 0; i < 400; ++i) {
        u64 w = 0;
        auto rnd_poly = [&](unsigned maxdeg) {
            unsigned d = 1 + static_cast<unsigned>(rng_below(23, counter, w, maxdeg));
            std::vector<Int> c(d + 1);
            for (auto& x : c) x = Int(rng_below(23, counter, w, 41)) - 20;
            if (c.back() == 0) c.back() = 1;
            ++counter;
            return IntPoly(std::move(c));
        };
        IntPoly A = rnd_poly(4), B = rnd_poly(4);
        Int expect = oracle::sylvester_resultant(A, B);
        CHECK(resultant(A, B) == expect);
        // swap sign rule
        Int swapped = resultant(B, A);
        Int sign = ((A.degree() % 2) && (B.degree() % 2)) ? -1 : 1;
        CHECK(resultant(A, B) == sign * swapped);
        // multiplicativity
        IntPoly C = rnd_poly(3);
        CHECK(resultant(A, B * C) == resultant(A, B) * resultant(A, C));
        // vanishing iff common factor
        CHECK((resultant(A, A * B) == 0));
        CHECK((poly_gcd(A, B).degree() > 0) == (resultant(A, B) == 0));
    }
}

TEST_CASE("discriminant") {
    CHECK(discriminant(P("t^2+1")) == -4);
    CHECK(discriminant(P("t^2-3t+2")) == 1);
    CHECK(discriminant(P("t^2-2t+1")) == 0);  // (t-1)^2
    CHECK(discriminant(P("t+7")) == 1);
    CHECK(discriminant(P("t^3-t")) == 4);     // 4*1 - 27*0 style cubic: disc(t^3+pt+q)
    CHECK_THROWS_AS(discriminant(P("5")), domain_error);
}

TEST_CASE("gcd and divisibility") {
    // gcd((t-1)(t+1)(2t+6), (t+1)(t+3)) = (t+1)(t+3)
    IntPoly g = poly_gcd(P("t^2-1") * P("2t+6"), P("t^2+4t+3"));
    CHECK(g == P("t+1") * P("t+3"));
    IntPoly q;
    CHECK(try_divide(P("t^2-1"), P("t-1"), q));
    CHECK(q == P("t+1"));
    CHECK_FALSE(try_divide(P("t^2+1"), P("t-1"), q));
}

TEST_CASE("squarefree decomposition and square classification") {
    auto dec = squarefree_decomposition(P("t+1") * P("t+1") * P("t+2") * IntPoly::constant(Int(12)));
    CHECK(dec.content == 12);
    CHECK(dec.sign == 1);
    REQUIRE(dec.factors.size() == 2);
    CHECK(dec.factors[0] == P("t+2"));
    CHECK(dec.factors[1] == P("t+1"));

    auto c1 = classify_square(P("t+1") * P("t+1") * IntPoly::constant(Int(4)));
    CHECK(c1.kind == SquareClassification::square_in_base);
    CHECK(c1.constant == 4);
    CHECK(c1.root == P("t+1"));

    auto c2 = classify_square(-(P("t+1") * P("t+1")));
    CHECK(c2.kind == SquareClassification::square_over_closure_only);
    CHECK(c2.constant == -1);

    auto c3 = classify_square(P("t+1") * P("t+2") * IntPoly::constant(Int(6)));
    CHECK(c3.kind == SquareClassification::nonsquare);

    // reconstruction property on random products
    for (u64 i = 0; i < 60; ++i) {
        u64 w = 0;
        IntPoly prod = IntPoly::constant(Int(1 + static_cast<long>(rng_below(29, i, w, 5))));
        for (int rep = 0; rep < 3; ++rep) {
            long a = static_cast<long>(rng_below(29, i, w, 9)) - 4;
            long b = 1 + static_cast<long>(rng_below(29, i, w, 3));
            unsigned mult = 1 + static_cast<unsigned>(rng_below(29, i, w, 3));
            IntPoly f(std::vector<Int>{Int(a), Int(b)});
            for (unsigned k = 0; k < mult; ++k) prod = prod * f;
        }
        auto dec2 = squarefree_decomposition(prod);
        IntPoly rebuilt = IntPoly::constant(dec2.content * dec2.sign);
        for (size_t k = 1; k <= dec2.factors.size(); ++k)
            for (size_t rep = 0; rep < k; ++rep) rebuilt = rebuilt * dec2.factors[k - 1];
        CHECK(rebuilt == prod);
    }
}
