#pragma once

#include "trqf/enumeration.hpp"
#include "trqf/polynomial.hpp"

#include <optional>
#include <vector>

namespace trqf {

struct MobiusPhi {
    long mu = 0;
    long phi = 0;
};

MobiusPhi mobius_phi(long k);

// Phi_k over Z as prod_{d | k} (x^d - 1)^mu(k/d).
Poly cyclotomic_poly(long k);

// Minimal polynomial of zeta_k + zeta_k^-1, degree phi(k)/2 (k >= 3).
Poly minpoly_cos(long k);

struct CycloInfo {
    long k = 0;
    long phi = 0;
    long mu = 0;
    Poly minpoly;        // of omega = zeta_k + zeta_k^-1
    FieldContext field;  // F_k on the power basis of omega
    Element omega;
    Element alpha;       // 2 + omega
    Element beta;        // 2 - omega
};

CycloInfo cyclo_info(long k);

struct AlphaBetaReport {
    long k = 0;
    int degree = 0;
    long mu = 0;
    Integer norm_alpha, norm_beta;
    Integer trace_alpha, trace_beta;
    Integer expected_norm_alpha, expected_norm_beta;
    Integer expected_trace_alpha, expected_trace_beta;
    Integer phi_at_1, phi_at_minus_1;  // Phi_k(1), Phi_k(-1)
    std::optional<bool> alpha_indecomposable, beta_indecomposable;  // degree > 2 only
};

// Checks norms and traces of alpha_k, beta_k against the closed forms
// (N(alpha_k) = p iff k = 2p^n, N(beta_k) = p iff k = p^n, else 1;
// Tr = 2[F_k:Q] +- mu(k)) and against Phi_k(-1), Phi_k(1). Throws
// MismatchAgainstFormula on any disagreement.
AlphaBetaReport alpha_beta_verify(long k, const EnumerationOptions& opt = {});

// A root of minpoly_cos(k) in K, searched among integers with omega^2 <= 4.
// Prefers a root whose first nonzero coordinate is positive.
std::optional<Element> subfield_test(const FieldContext& K, long k, const EnumerationOptions& opt = {});

// Horner evaluation of a rational polynomial at a field element.
Element evaluate(const Poly& p, const Element& a);

// p if k = p^n for a prime p and n >= 1, else 0.
long prime_power_base(long k);

}  // namespace trqf
