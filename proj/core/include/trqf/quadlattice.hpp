#pragma once

#include "trqf/enumeration.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trqf {

// Determinant and inverse of a square matrix over K (Gaussian elimination).
Element det(const ElementMatrix& m);
ElementMatrix inverse(const ElementMatrix& m);  // Singular when det = 0
ElementMatrix multiply(const ElementMatrix& a, const ElementMatrix& b);
ElementMatrix transpose(const ElementMatrix& a);

// Symmetric matrix over K; the Gram matrix of a free lattice in a fixed basis.
class GramMatrix {
public:
    GramMatrix() = default;
    explicit GramMatrix(ElementMatrix entries);

    static GramMatrix diagonal(const std::vector<Element>& d);
    static GramMatrix parse(const FieldContext& K, const std::vector<std::vector<std::string>>& rows);

    FieldContext field() const { return entries_.at(0).at(0).field(); }
    std::size_t size() const { return entries_.size(); }
    const Element& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
    const ElementMatrix& entries() const { return entries_; }

    Element det() const { return trqf::det(entries_); }
    bool is_classical() const;
    // All principal minors totally nonnegative.
    bool is_totally_psd() const;
    bool is_totally_pd() const;
    // Gram of the vectors given by the columns of M (coordinates in this basis).
    GramMatrix transform(const ElementMatrix& M) const;
    GramMatrix scaled(const Element& s) const;

    std::string to_string() const;
    friend bool operator==(const GramMatrix& a, const GramMatrix& b) { return a.entries_ == b.entries_; }

private:
    ElementMatrix entries_;
};

// Gram of the dual lattice in the dual basis; equals the coordinate matrix of
// the dual basis in terms of the original one.
GramMatrix gram_inverse_dual(const GramMatrix& G);

struct LatticePredicates {
    bool classical = false;
    bool unimodular = false;
    Element det;
    // det times a square of a unit, reduced to small logarithmic size.
    Element det_class;
};

LatticePredicates lattice_predicates(const GramMatrix& G);

// Representative of a U^2 class: a * u^2 with sum |log|sigma_i|| locally minimal.
Element reduce_by_unit_squares(const Element& a);
// a / b is the square of a unit.
bool same_unit_square_class(const Element& a, const Element& b);

// Every integral omega with omega^2 <= a b, the possible off-diagonal Gram
// entries between vectors of values a and b.
std::vector<Element> offdiag_candidates(const Element& a, const Element& b, const EnumerationOptions& opt = {});

// Isometry between the lattice spanned by generators with Gram G1 (possibly
// singular, e.g. four vectors spanning a ternary lattice) and the free lattice
// with definite Gram G2. basis[j] holds the coordinates of the j-th new basis
// vector with respect to the independent generators `pivots`.
struct Isometry {
    std::vector<std::size_t> pivots;
    ElementMatrix basis;  // r x r, column j = vector j
};

std::optional<Isometry> isometry_search(const GramMatrix& G1, const GramMatrix& G2, const EnumerationOptions& opt = {});

enum class LatticeClass { L1, L2, L3, L3p, Diag_1_lambda_2, Diag_1_lambda_3, Other };

std::string_view to_string(LatticeClass c);
// Fixed ternary Gram of a named class over K (needs sqrt2 in K).
GramMatrix class_gram(const FieldContext& K, LatticeClass c);
const std::vector<LatticeClass>& named_classes();

// Vectors v_1..v_k of the lattice of G (coordinates in its basis) whose Gram
// is exactly target.
std::optional<ElementMatrix> contains_sublattice(const GramMatrix& G, const GramMatrix& target,
                                                 const EnumerationOptions& opt = {});

struct TernaryCase {
    Element w13, w23;
    GramMatrix gram;
    bool psd = false;
    Element det;
    LatticeClass cls = LatticeClass::Other;
    std::optional<Isometry> isometry;
};

// The cases [[1,0,w13],[0,lambda,w23],[w13,w23,3]], w13 in {0,1,sqrt2},
// w23 in {0,1,1+sqrt2}, classified against the named classes.
std::vector<TernaryCase> ternary_classification(const FieldContext& K, const EnumerationOptions& opt = {});

struct OverlatticeTest {
    bool proper_overlattice = false;  // p7 = 5+3sqrt2 is divisible by a square
    std::optional<SquareFactor> witness;
};

OverlatticeTest free_overlattice_test(const FieldContext& K, const EnumerationOptions& opt = {});

}  // namespace trqf
