#pragma once

#include <string>

#include "hasseforge/base.hpp"

namespace hf {

// Interval with exact rational endpoints. All arithmetic is exact; rounding
// happens only when rendering decimal enclosures.
struct RatInterval {
    Rat lo{0}, hi{0};

    RatInterval() = default;
    RatInterval(Rat point) : lo(point), hi(std::move(point)) {}
    RatInterval(Rat l, Rat h);

    Rat width() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval& x) const { return lo <= x.lo && x.hi <= hi; }
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const RatInterval& a, const RatInterval& b);

// natural log enclosure of a positive rational; prec = decimal digits of the
// requested tightness
RatInterval log_interval(const Rat& x, int prec);

// q-th root enclosure of a nonnegative interval
RatInterval root_interval(const RatInterval& x, unsigned long q, int prec);

// x^e for nonnegative x and nonnegative rational exponent e
RatInterval pow_interval(const RatInterval& x, const Rat& e, int prec);

// outward-rounded decimal strings with `digits` places after the point
std::string decimal_lower(const Rat& x, int digits);
std::string decimal_upper(const Rat& x, int digits);
std::pair<std::string, std::string> decimal_enclosure(const RatInterval& x, int digits);

// -1 if m < lo, +1 if m > hi, 0 if inside the enclosure
int compare_rat_interval(const Rat& m, const RatInterval& iv);

Rat rat_from_decimal(const std::string& text);  // "0.3504" -> 3504/10000

}  // namespace hf
