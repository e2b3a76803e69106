#include "trqf/interval.hpp"

#include <cstdio>

namespace trqf {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Interval r{p[0], p[0]};
    for (int i = 1; i < 4; ++i) {
        if (p[i] < r.lo) r.lo = p[i];
        if (p[i] > r.hi) r.hi = p[i];
    }
    return r;
}

Interval operator*(const Rational& s, const Interval& a) {
    if (s >= 0) return {s * a.lo, s * a.hi};
    return {s * a.hi, s * a.lo};
}

Interval abs(const Interval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return {0, std::max(Rational(-a.lo), a.hi)};
}

Interval square(const Interval& a) {
    Interval m = abs(a);
    return {m.lo * m.lo, m.hi * m.hi};
}

Interval sqrt(const Interval& a, unsigned bits) {
    return {sqrt_lower(a.lo, bits), sqrt_upper(a.hi, bits)};
}

Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Rational round_down(const Rational& q, unsigned bits) {
    if (q.get_den() == 1) return q;
    Integer scale = Integer(1) << bits;
    Rational r(floor(q * scale), scale);
    r.canonicalize();
    return r;
}

Rational round_up(const Rational& q, unsigned bits) {
    if (q.get_den() == 1) return q;
    Integer scale = Integer(1) << bits;
    Rational r(ceil(q * scale), scale);
    r.canonicalize();
    return r;
}

Interval round_out(const Interval& a, unsigned bits) {
    return {round_down(a.lo, bits), round_up(a.hi, bits)};
}

std::string to_string(const Interval& a, int digits) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "[%.*g, %.*g]", digits, a.lo.get_d(), digits, a.hi.get_d());
    return buf;
}

}  // namespace trqf
