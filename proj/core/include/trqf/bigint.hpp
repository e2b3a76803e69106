#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace trqf {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Integer& d, const Integer& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool fits_int64(const Integer& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }

inline std::string to_string(const Integer& a) { return a.get_str(); }

std::string to_string(const Rational& q);

// Accepts "p/q", "p" or a decimal-free integer with optional sign.
Rational parse_rational(const std::string& text);

// Integers up to |n| <= 2^62 are factored by trial division; larger inputs are
// rejected since only norms of desk-scale elements are ever factored.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

// All positive divisors of |n|, ascending.
std::vector<Integer> divisors(const Integer& n);

// Smallest k with k*k >= n (n >= 0).
Integer isqrt_ceil(const Integer& n);

// Rational interval bounds for sqrt(q), q >= 0, accurate to 2^-bits.
Rational sqrt_lower(const Rational& q, unsigned bits);
Rational sqrt_upper(const Rational& q, unsigned bits);

double to_double(const Rational& q);

}  // namespace trqf
