#pragma once

#include "trqf/numberfield.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace trqf {

using ElementMatrix = std::vector<std::vector<Element>>;
using ElementVector = std::vector<Element>;

enum class DominanceMode {
    SquareDominated,  // omega^2 <= B
    Interval,         // 0 <= omega <= B
};

std::string_view to_string(DominanceMode m);

struct DominanceQuery {
    Element bound;
    DominanceMode mode = DominanceMode::SquareDominated;
};

struct EnumerationOptions {
    double ceiling = 1e8;  // maximal number of lattice points a box may hold
};

// Integer coordinate box that provably contains every solution.
struct EnumerationBox {
    std::vector<Integer> lo;
    std::vector<Integer> hi;
    unsigned bits = 0;  // precision at which the box stabilised
    double volume() const;
};

struct DominatedResult {
    std::vector<Element> elements;
    EnumerationBox box;
    std::uint64_t candidates = 0;  // points that reached the exact test
};

// Box for all integral omega with every sigma_i(omega) inside the enclosures
// returned by region(bits). Precision doubles from 16 bits until the box
// volume changes by less than 1% (at most 256 bits).
EnumerationBox region_box(const FieldContext& K, const std::function<std::vector<Interval>(unsigned)>& region);

DominatedResult enumerate_dominated_report(const DominanceQuery& q, const EnumerationOptions& opt = {});
std::vector<Element> enumerate_dominated(const DominanceQuery& q, const EnumerationOptions& opt = {});
std::vector<Element> enumerate_dominated(const Element& bound, DominanceMode mode, const EnumerationOptions& opt = {});

// All v in O_K^n with v^T G v = gamma, at most cap of them, sorted
// lexicographically. G must be totally positive definite.
std::vector<ElementVector> enumerate_representations(const ElementMatrix& G, const Element& gamma, std::size_t cap,
                                                     const EnumerationOptions& opt = {});

struct Indecomposability {
    bool indecomposable = false;
    std::string reason;  // "norm", "trace", "exhaustive", "two"
    Element tested;      // alpha, or its totally positive associate in sigma mode
    std::optional<Element> beta, gamma;  // decomposition tested = beta + gamma
};

Indecomposability is_indecomposable(const Element& alpha, bool sigma_mode = false,
                                    const std::vector<Element>* units = nullptr, const EnumerationOptions& opt = {});

// beta with beta^2 = alpha whose first nonzero coordinate is positive.
std::optional<Element> sqrt_element(const Element& alpha, const EnumerationOptions& opt = {});

// Representatives modulo units of the integral elements of norm +-n.
// Needs d-1 independent units among the field's generators.
std::vector<Element> elements_of_norm(const FieldContext& K, const Integer& n, const EnumerationOptions& opt = {});

struct SquareFactor {
    Element t;
    Element gamma;  // alpha = gamma * t^2
};

std::optional<SquareFactor> squarefree_witness(const Element& alpha, const EnumerationOptions& opt = {});

struct Unsquared {
    Element mu;    // unit
    Element beta;  // totally positive nonsquare
    int k = 0;     // alpha = mu * beta^(2^k)
};

Unsquared unsquare(const Element& alpha, const std::vector<Element>& units, const EnumerationOptions& opt = {});

// omega_1..omega_n with sum of squares gamma, or nullopt when none exists.
std::optional<std::vector<Element>> sum_of_squares_test(const Element& gamma, int n, const EnumerationOptions& opt = {});

}  // namespace trqf
