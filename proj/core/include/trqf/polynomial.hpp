#pragma once

#include "trqf/bigint.hpp"
#include "trqf/interval.hpp"

#include <string>
#include <utility>
#include <vector>

namespace trqf {

// Dense univariate polynomial over Q, coefficients stored constant term first.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly from_integers(const std::vector<Integer>& coeffs);
    static Poly monomial(const Rational& c, std::size_t k);
    static Poly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool has_integer_coeffs() const;
    std::vector<Integer> integer_coeffs() const;

    Poly derivative() const;
    Poly monic() const;
    Rational eval(const Rational& x) const;
    Interval eval(const Interval& x, unsigned round_bits = 0) const;
    double eval(double x) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
Poly compose(const Poly& outer, const Poly& inner);

std::vector<Poly> sturm_sequence(const Poly& p);
int sign_changes_at(const std::vector<Poly>& seq, const Rational& x);
// Number of distinct real roots in (a, b].
int count_real_roots(const std::vector<Poly>& seq, const Rational& a, const Rational& b);
// Bound R with every complex root of p strictly inside |z| < R.
Rational cauchy_bound(const Poly& p);

// Disjoint isolating intervals for the real roots of a squarefree p, ascending.
// Each interval is either a point [r, r] at an exact rational root or an open
// interval (lo, hi) with a sign change of p and exactly one root.
std::vector<Interval> isolate_real_roots(const Poly& p);

// Bisects an isolating interval until its width is at most 2^-bits.
Interval refine_root(const Poly& p, Interval iv, unsigned bits);

}  // namespace trqf
