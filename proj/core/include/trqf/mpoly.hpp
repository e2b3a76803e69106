#pragma once

#include "trqf/numberfield.hpp"

#include <map>
#include <string>
#include <vector>

namespace trqf {

// Polynomial in a fixed number of named indeterminates with coefficients in K.
class MPoly {
public:
    using Exponents = std::vector<int>;

    MPoly() = default;
    MPoly(FieldContext K, std::vector<std::string> names);

    static MPoly constant(const FieldContext& K, const std::vector<std::string>& names, const Element& c);
    static MPoly variable(const FieldContext& K, const std::vector<std::string>& names, std::size_t i);
    MPoly constant(const Element& c) const { return constant(K_, names_, c); }
    MPoly variable(std::size_t i) const { return variable(K_, names_, i); }
    MPoly variable(const std::string& name) const;

    const std::map<Exponents, Element>& terms() const { return terms_; }
    const std::vector<std::string>& names() const { return names_; }
    bool is_zero() const { return terms_.empty(); }

    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    // Rewrites every multiple of the monomial lhs as rhs * (quotient) until
    // no term is divisible by lhs.
    MPoly reduce(const Exponents& lhs, const Element& rhs) const;
    // Divides by the largest monomial dividing every term.
    MPoly strip_monomial() const;
    // Substitutes values for all indeterminates.
    Element evaluate(const std::vector<Element>& values) const;
    // Substitutes values for all indeterminates except `var`, which must occur
    // only to even powers and is replaced through its square.
    Element evaluate_even(const std::vector<Element>& values, std::size_t var, const Element& square) const;

    std::string to_string() const;
    // "positive terms = negated negative terms", e.g. "gamma = beta^2*t".
    std::string identity_string() const;

private:
    void add_term(const Exponents& e, const Element& c);

    FieldContext K_;
    std::vector<std::string> names_;
    std::map<Exponents, Element> terms_;
};

MPoly det(const std::vector<std::vector<MPoly>>& m);

// Element of Q or Q(sqrt2) written as "a+b*sqrt2"; other fields fall back to
// basis coordinates.
std::string pretty(const Element& a);

}  // namespace trqf
