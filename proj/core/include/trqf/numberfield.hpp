#pragma once

#include "trqf/bigint.hpp"
#include "trqf/error.hpp"
#include "trqf/interval.hpp"
#include "trqf/polynomial.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace trqf {

// Integer coordinates over the integral basis plus a denominator.
struct ElementData {
    std::vector<Integer> coords;
    Integer denom = 1;
};

struct FieldRecord {
    std::string label;
    int degree = 0;
    std::vector<Integer> poly;               // constant term first, monic
    std::vector<std::vector<Rational>> basis;  // rows in power-basis coordinates
    Integer disc = 0;
    long h = 1;
    long h_plus = 0;  // 0 when the table row carries no narrow class number
    std::vector<ElementData> units;
    std::optional<std::vector<Integer>> sqrt2;
    std::map<std::string, std::string> tags;
};

namespace detail {
struct FieldData;
}

class FieldContext;

class Element {
public:
    Element() = default;

    const std::vector<Integer>& coords() const { return coords_; }
    const Integer& denom() const { return denom_; }
    int degree() const { return static_cast<int>(coords_.size()); }
    bool valid() const { return static_cast<bool>(field_); }
    bool is_integral() const { return denom_ == 1; }
    bool is_zero() const;
    bool is_rational() const;
    FieldContext field() const;

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator-(const Element& a);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator/(const Element& a, const Element& b);
    friend Element operator*(const Rational& s, const Element& a);
    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
    // Lexicographic order on (coords, denom); used only for deterministic output.
    friend bool operator<(const Element& a, const Element& b);

    Element pow(long e) const;
    Element inverse() const;
    Element square() const { return *this * *this; }

    std::string to_string() const;

private:
    friend class FieldContext;
    Element(std::shared_ptr<const detail::FieldData> f, std::vector<Integer> c, Integer den);
    void canonicalize();

    std::shared_ptr<const detail::FieldData> field_;
    std::vector<Integer> coords_;
    Integer denom_ = 1;
};

enum class Dominance { Greater, Equal, Less, Incomparable };

std::string_view to_string(Dominance d);

struct Signature {
    std::vector<int> signs;
    friend bool operator==(const Signature& a, const Signature& b) { return a.signs == b.signs; }
};

struct NormTrace {
    Rational norm;
    Rational trace;
};

struct Associate {
    Element unit;     // eta
    Element element;  // eta * a, totally positive
};

// Double-precision embedding of an element with a certified error radius:
// |sigma_i(a) - mid[i]| <= rad[i].
struct ApproxEmbedding {
    std::vector<double> mid;
    std::vector<double> rad;
};

class FieldContext {
public:
    FieldContext() = default;

    static FieldContext load(const FieldRecord& record);

    const FieldRecord& record() const;
    const std::string& label() const { return record().label; }
    int degree() const;
    const Poly& poly() const;
    const Integer& disc() const { return record().disc; }
    // Product of basis elements i and j in basis coordinates.
    const std::vector<Integer>& mult(int i, int j) const;
    const std::vector<Interval>& root_intervals() const;
    bool same_field(const FieldContext& other) const { return data_ == other.data_; }
    bool valid() const { return static_cast<bool>(data_); }

    Element zero() const;
    Element one() const;
    Element from_int(const Integer& n) const;
    Element from_rational(const Rational& q) const;
    Element basis_element(int j) const;
    Element make(std::vector<Integer> coords, Integer denom = 1) const;
    Element make(const ElementData& e) const { return make(e.coords, e.denom); }
    // Element given by rational coordinates in the power basis of the defining root.
    Element from_power_basis(const std::vector<Rational>& coeffs) const;
    std::vector<Rational> to_power_basis(const Element& a) const;
    // sqrt2 tag, if present.
    std::optional<Element> sqrt2() const;

    NormTrace norm_trace(const Element& a) const;
    Rational norm(const Element& a) const { return norm_trace(a).norm; }
    Rational trace(const Element& a) const { return norm_trace(a).trace; }
    // Characteristic polynomial of multiplication by a, monic of degree d.
    Poly charpoly(const Element& a) const;
    // Matrix of multiplication by a on basis coordinates (column j = a * b_j),
    // scaled by a.denom so that entries are integers.
    std::vector<std::vector<Integer>> mult_matrix_numerator(const Element& a) const;

    std::vector<Interval> embed(const Element& a, const Rational& precision) const;
    Interval house(const Element& a, const Rational& precision) const;
    // Certified double approximation; nullopt when coordinates are too large.
    std::optional<ApproxEmbedding> approx_embed(const Element& a) const;
    // Approximate embeddings of the basis elements: m[i][j] ~ sigma_i(b_j).
    const std::vector<std::vector<double>>& basis_embedding() const;
    const std::vector<std::vector<double>>& basis_embedding_error() const;
    // Enclosures of sigma_i(b*_j) for the trace-dual basis b*_j, width <= 2^-bits.
    std::vector<std::vector<Interval>> dual_basis_embedding(unsigned bits) const;
    // The trace-dual basis as field elements.
    std::vector<Element> dual_basis() const;

    Dominance compare(const Element& a, const Element& b) const;
    bool totally_positive(const Element& a) const;
    bool totally_nonnegative(const Element& a) const;
    Signature signature(const Element& a) const;
    bool is_unit(const Element& a) const;

    // Unit generators from the record (including -1 when supplied).
    std::vector<Element> units() const;
    // Units of infinite order among the generators.
    std::vector<Element> fundamental_units() const;
    Associate totally_positive_associate(const Element& a, const std::vector<Element>& units) const;
    Associate totally_positive_associate(const Element& a) const { return totally_positive_associate(a, units()); }

    // Q(sqrt2) and Q with their standard data, used where no table is needed.
    static FieldContext rationals();
    static FieldContext q_sqrt2();

private:
    friend class Element;
    explicit FieldContext(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> data_;
};

Dominance compare_dominance(const Element& a, const Element& b);

// Reads an arithmetic expression over the field: integers, rationals,
// sqrt2 (or \u221a2) when the field carries the tag, x for the defining root,
// b0..b{d-1} for basis elements, coordinate literals [c0,...,c{d-1}], and the
// operators + - * / ^ with parentheses.
Element parse_element(const FieldContext& K, const std::string& text);

// Determinant by fraction-free elimination.
Integer det_bareiss(std::vector<std::vector<Integer>> m);
// Solves m x = rhs over Q; throws Singular when m is not invertible.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs);
// Characteristic polynomial det(xI - m) via Hessenberg reduction.
Poly charpoly_rational(std::vector<std::vector<Rational>> m);

}  // namespace trqf
