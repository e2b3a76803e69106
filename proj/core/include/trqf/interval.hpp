#pragma once

#include "trqf/bigint.hpp"

#include <algorithm>
#include <string>

namespace trqf {

// Closed interval with exact rational endpoints.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    Interval(const Rational& v) : lo(v), hi(v) {}
    Interval(const Rational& l, const Rational& h) : lo(l), hi(h) {}

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool positive() const { return lo > 0; }
    bool negative() const { return hi < 0; }
    Rational mag() const { return std::max(Rational(abs(lo)), Rational(abs(hi))); }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);
Interval abs(const Interval& a);
Interval square(const Interval& a);
Interval sqrt(const Interval& a, unsigned bits);
Interval hull(const Interval& a, const Interval& b);

// Widens the endpoints outward onto the grid 2^-bits so that repeated
// arithmetic does not grow the denominators without bound.
Interval round_out(const Interval& a, unsigned bits);

Rational round_down(const Rational& q, unsigned bits);
Rational round_up(const Rational& q, unsigned bits);

std::string to_string(const Interval& a, int digits = 12);

}  // namespace trqf
