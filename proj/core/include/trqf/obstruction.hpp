#pragma once

#include "trqf/mpoly.hpp"
#include "trqf/quadlattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trqf {

// ------------------------------------------------------------ orthogonality

struct PairForcing {
    std::size_t i = 0, j = 0;
    Element product;                  // alpha_i alpha_j
    EnumerationBox box;               // box the enumeration exhausted
    std::vector<Element> admissible;  // every omega with omega^2 <= product
    bool forces_zero() const { return admissible.size() == 1 && admissible[0].is_zero(); }
};

struct OrthogonalityCertificate {
    std::vector<Element> elements;
    std::vector<PairForcing> pairs;
    bool valid() const;
};

OrthogonalityCertificate orthogonality_forcing(const std::vector<Element>& elements, const EnumerationOptions& opt = {});

// ------------------------------------------------------------ dual lattice

// Search for x with x1^2/a1 + x2^2/a2 + x3^2/a3 = gamma, i.e. gamma is a value
// of the dual of <a1,a2,a3>; solved in the cleared form
// x1^2 a2 a3 + x2^2 a1 a3 + x3^2 a1 a2 = gamma a1 a2 a3.
struct DualTranscript {
    std::vector<Element> diag;      // a_i
    Element gamma;
    std::vector<Element> cleared;   // coefficients of the cleared equation
    Element cleared_target;
    bool represented = false;
    std::optional<ElementVector> vector;
};

DualTranscript dual_nonrepresentation(const std::vector<Element>& diag, const Element& gamma,
                                      const EnumerationOptions& opt = {});

// ------------------------------------------------------------ case analyses

enum class CaseMode { L1Extension, L3Extension, NonsquarefreeTwo };
std::string_view to_string(CaseMode m);
CaseMode parse_case_mode(const std::string& s);

struct SquareClass {
    Element residual;
    Element s;  // value = residual * s^2
};

// Square-class representative over Z[sqrt2]: strips rational square factors
// and squares of sqrt2, then moves by squares of 1+sqrt2 to the smallest
// trace of v^2 (ties prefer the larger sqrt2 coefficient).
SquareClass square_class_reduce(const Element& value);

struct CaseEntry {
    Element alpha, beta;
    Element remainder;           // 6 - lambda alpha^2 - beta^2
    bool totally_positive = false;
    bool integral = true;
    std::optional<Element> x_squared;
    std::optional<Element> x;    // when x lies in Q(sqrt2)
    bool reconstructs_l1 = false;
    std::optional<SquareClass> square_class;
    std::string status;          // "not_totally_positive", "not_integral", "excluded_L1", "emitted"
};

struct SymbolicBranch {
    std::string label;
    std::string gram;
    std::string det;
    std::string reduced;
    std::string conclusion;
};

struct CaseAnalysisReport {
    CaseMode mode;
    std::string det_symbolic;
    std::string det_formula;
    bool det_formula_matches = false;
    std::vector<CaseEntry> cases;
    std::vector<Element> x_squared;  // emitted values in case order
    std::vector<Element> residuals;  // distinct residual classes in order of appearance
    std::vector<SymbolicBranch> branches;
};

CaseAnalysisReport quartic_case_analysis(CaseMode mode, const EnumerationOptions& opt = {});

// Symbolic 4x4 Gram of the case analysis with indeterminates alpha, beta, x.
MPoly case_gram_det(CaseMode mode);
GramMatrix case_gram(CaseMode mode, const Element& alpha, const Element& beta, const Element& x);

// ------------------------------------------------------------ obstruction search

struct ObstructionCertificate {
    std::string field;
    std::vector<Element> triple;
    Element gamma;
    OrthogonalityCertificate orthogonality;
    DualTranscript nonrepresentation;
};

// Totally positive elements of norm <= max_norm, one per class modulo squares
// of units, ordered by (norm, trace, coordinates). Sources: every element of
// house <= house_bound, plus norm-targeted enumeration for each norm when the
// record has units.
std::vector<Element> candidate_pool(const FieldContext& K, const Integer& max_norm = 64, long house_bound = 6,
                                    const EnumerationOptions& opt = {});

// True when the units of the record realise every sign vector, i.e. U+ = U^2.
bool units_realize_all_signatures(const FieldContext& K);

std::optional<ObstructionCertificate> obstruction_search(const FieldContext& K, std::size_t pool_size = 0,
                                                         const EnumerationOptions& opt = {});

std::string certificate_to_json(const ObstructionCertificate& c);
ObstructionCertificate certificate_from_json(const FieldContext& K, const std::string& json);
// Re-runs both searches from scratch and compares with the recorded data.
bool revalidate(const ObstructionCertificate& c, const EnumerationOptions& opt = {});

// ------------------------------------------------------------ indecomposables

enum class IndecomposableKind { Square, LambdaSquare, Other };
std::string_view to_string(IndecomposableKind k);

struct IndecomposableEntry {
    Element alpha;
    Rational norm, trace;
    IndecomposableKind kind;
};

std::vector<IndecomposableEntry> indecomposables_classify(const FieldContext& K, const Rational& trace_bound,
                                                          const EnumerationOptions& opt = {});

// ------------------------------------------------------------ 2 = gamma t^2

struct TwoDecomposition {
    Element gamma, t;
    int j = 0;  // norm(t) = 2^j
};

std::optional<TwoDecomposition> two_decomposition_search(const FieldContext& K, const EnumerationOptions& opt = {});

// Totally positive elements of norm n, one per class modulo squares of units
// (assuming U+ = U^2), from norm-targeted enumeration.
std::vector<Element> totally_positive_of_norm(const FieldContext& K, const Integer& n, const EnumerationOptions& opt = {});

}  // namespace trqf
