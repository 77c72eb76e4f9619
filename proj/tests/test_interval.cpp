#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hasseforge/interval.hpp"

using namespace hf;

TEST_CASE("interval arithmetic is exact") {
    RatInterval a(Rat(1, 3), Rat(1, 2));
    RatInterval b(Rat(-2), Rat(3));
    RatInterval s = a + b;
    CHECK(s.lo == Rat(1, 3) - 2);
    CHECK(s.hi == Rat(1, 2) + 3);
    RatInterval p = a * b;
    CHECK(p.lo == Rat(-1));          // 1/2 * -2
    CHECK(p.hi == Rat(3, 2));        // 1/2 * 3
    CHECK_THROWS_AS(RatInterval(Rat(1), Rat(0)), internal_error);
}

TEST_CASE("decimal rendering rounds outward") {
    CHECK(decimal_lower(Rat(1, 3), 4) == "0.3333");
    CHECK(decimal_upper(Rat(1, 3), 4) == "0.3334");
    CHECK(decimal_lower(Rat(-1, 3), 3) == "-0.334");
    CHECK(decimal_upper(Rat(-1, 3), 3) == "-0.333");
    CHECK(decimal_lower(Rat(7, 2), 2) == "3.50");
    CHECK(rat_from_decimal("0.3504") == Rat(3504, 10000));
    CHECK(rat_from_decimal("-2.5") == Rat(-5, 2));
    CHECK(rat_from_decimal("0.9999723") == Rat(9999723, 10000000));
}

TEST_CASE("log enclosure") {
    // ln 2 = 0.6931471805599453...
    RatInterval l2 = log_interval(Rat(2), 20);
    CHECK(l2.lo <= l2.hi);
    CHECK(l2.lo > rat_from_decimal("0.69314718055994530941"));
    CHECK(l2.hi < rat_from_decimal("0.69314718055994530943"));
    // ln 10 = 2.302585092994046...
    RatInterval l10 = log_interval(Rat(10), 15);
    CHECK(l10.lo > rat_from_decimal("2.302585092994045"));
    CHECK(l10.hi < rat_from_decimal("2.302585092994047"));
    // ln 1 = 0, ln(1/2) = -ln 2
    RatInterval l1 = log_interval(Rat(1), 10);
    CHECK(l1.lo == 0);
    CHECK(l1.hi == 0);
    RatInterval lh = log_interval(Rat(1, 2), 15);
    CHECK(lh.lo < 0);
    CHECK(-lh.hi <= l2.hi);
    CHECK_THROWS_AS(log_interval(Rat(0), 10), domain_error);
}

TEST_CASE("roots and powers") {
    RatInterval r = root_interval(RatInterval(Rat(2)), 2, 15);
    CHECK(r.lo > rat_from_decimal("1.414213562373094"));
    CHECK(r.hi < rat_from_decimal("1.414213562373096"));
    // x^(5/2) at x = 4 is 32
    RatInterval p = pow_interval(RatInterval(Rat(4)), Rat(5, 2), 15);
    CHECK(p.contains(Rat(32)));
    CHECK(p.width() < Rat(1, 1000000));
    // integer exponent stays exact
    RatInterval q = pow_interval(RatInterval(Rat(3, 2)), Rat(3), 10);
    CHECK(q.lo == Rat(27, 8));
    CHECK(q.hi == Rat(27, 8));
    // zero base
    RatInterval z = pow_interval(RatInterval(Rat(0)), Rat(3, 2), 10);
    CHECK(z.lo == 0);
    CHECK(z.hi < Rat(1, 1000));
}

TEST_CASE("interval comparison") {
    RatInterval iv(Rat(3), Rat(4));
    CHECK(compare_rat_interval(Rat(2), iv) == -1);
    CHECK(compare_rat_interval(Rat(5), iv) == 1);
    CHECK(compare_rat_interval(Rat(7, 2), iv) == 0);
}
