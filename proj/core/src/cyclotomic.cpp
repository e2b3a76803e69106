#include "trqf/cyclotomic.hpp"

#include <string>

namespace trqf {

namespace {

std::vector<std::pair<long, int>> factor(long k) {
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= k; ++p) {
        if (k % p) continue;
        int e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (k > 1) f.emplace_back(k, 1);
    return f;
}

void require_k(long k) {
    if (k < 3) throw Error(ErrorCode::UnsupportedK, "k must be at least 3, got " + std::to_string(k));
}

bool first_nonzero_positive(const Element& a) {
    for (const auto& c : a.coords())
        if (c != 0) return c > 0;
    return true;
}

}  // namespace

MobiusPhi mobius_phi(long k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
    MobiusPhi r{1, 1};
    for (auto [p, e] : factor(k)) {
        r.mu = e > 1 ? 0 : -r.mu;
        long pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        r.phi *= pe * (p - 1);
    }
    return r;
}

long prime_power_base(long k) {
    auto f = factor(k);
    return f.size() == 1 ? f[0].first : 0;
}

Poly cyclotomic_poly(long k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
    // Phi_k = prod_{d | k} (x^d - 1)^mu(k/d)
    Poly num = Poly::monomial(1, 0), den = Poly::monomial(1, 0);
    for (long d = 1; d <= k; ++d) {
        if (k % d) continue;
        long mu = mobius_phi(k / d).mu;
        if (mu == 0) continue;
        Poly f = Poly::monomial(1, d) - Poly::monomial(1, 0);
        if (mu > 0)
            num = num * f;
        else
            den = den * f;
    }
    auto [q, r] = divmod(num, den);
    if (!r.is_zero() || !q.has_integer_coeffs()) throw Error(ErrorCode::ValidationError, "cyclotomic division is not exact");
    return q;
}

Poly minpoly_cos(long k) {
    require_k(k);
    Poly phi = cyclotomic_poly(k);
    const int m = phi.degree() / 2;
    // t^-m Phi_k(t) = a_m + sum_j a_{m+j} (t^j + t^-j), and t^j + t^-j = D_j(t + 1/t)
    // with D_0 = 2, D_1 = x, D_j = x D_{j-1} - D_{j-2}.
    Poly g = Poly::monomial(phi.coeff(m), 0);
    Poly prev = Poly::monomial(2, 0), cur = Poly::x();
    for (int j = 1; j <= m; ++j) {
        g = g + phi.coeff(m + j) * cur;
        Poly next = Poly::x() * cur - prev;
        prev = cur;
        cur = next;
    }
    return g;
}

Element evaluate(const Poly& p, const Element& a) {
    FieldContext K = a.field();
    Element s = K.zero();
    for (int i = p.degree(); i >= 0; --i) s = s * a + K.from_rational(p.coeff(i));
    return s;
}

CycloInfo cyclo_info(long k) {
    require_k(k);
    CycloInfo info;
    info.k = k;
    auto mp = mobius_phi(k);
    info.phi = mp.phi;
    info.mu = mp.mu;
    info.minpoly = minpoly_cos(k);
    const int d = info.minpoly.degree();

    FieldRecord rec;
    rec.label = "F" + std::to_string(k);
    rec.degree = d;
    rec.poly = info.minpoly.integer_coeffs();
    rec.basis.assign(d, std::vector<Rational>(d, Rational(0)));
    for (int i = 0; i < d; ++i) rec.basis[i][i] = 1;
    rec.tags["source"] = "cyclotomic";
    if (k % 8 == 0) {
        // sqrt2 = zeta_8 + zeta_8^-1 = D_{k/8}(omega) with the Dickson polynomials D_j.
        Poly prev = Poly::monomial(2, 0), cur = Poly::x();
        for (long j = 1; j < k / 8; ++j) {
            Poly next = Poly::x() * cur - prev;
            prev = cur;
            cur = next;
        }
        FieldContext tmp = FieldContext::load(rec);
        Element s2 = evaluate(cur, d == 1 ? tmp.from_int(-rec.poly[0]) : tmp.basis_element(1));
        rec.sqrt2 = s2.coords();
    }
    info.field = FieldContext::load(rec);
    const FieldContext& K = info.field;
    info.omega = d == 1 ? K.from_int(-rec.poly[0]) : K.basis_element(1);
    info.alpha = K.from_int(2) + info.omega;
    info.beta = K.from_int(2) - info.omega;
    return info;
}

AlphaBetaReport alpha_beta_verify(long k, const EnumerationOptions& opt) {
    CycloInfo info = cyclo_info(k);
    const FieldContext& K = info.field;
    AlphaBetaReport r;
    r.k = k;
    r.degree = K.degree();
    r.mu = info.mu;
    auto na = K.norm_trace(info.alpha), nb = K.norm_trace(info.beta);
    r.norm_alpha = na.norm.get_num();
    r.trace_alpha = na.trace.get_num();
    r.norm_beta = nb.norm.get_num();
    r.trace_beta = nb.trace.get_num();

    long p = prime_power_base(k);
    r.expected_norm_beta = p ? p : 1;
    long q = k % 2 == 0 ? prime_power_base(k / 2) : 0;
    r.expected_norm_alpha = q ? q : 1;
    r.expected_trace_alpha = 2 * r.degree + r.mu;
    r.expected_trace_beta = 2 * r.degree - r.mu;

    Poly phi = cyclotomic_poly(k);
    r.phi_at_1 = phi.eval(Rational(1)).get_num();
    r.phi_at_minus_1 = phi.eval(Rational(-1)).get_num();

    auto check = [&](bool ok, const std::string& what) {
        if (!ok) throw Error(ErrorCode::MismatchAgainstFormula, "k = " + std::to_string(k) + ": " + what);
    };
    check(K.totally_positive(info.alpha) && K.totally_positive(info.beta), "alpha_k or beta_k is not totally positive");
    check(info.alpha + info.beta == K.from_int(4), "alpha + beta != 4");
    check(na.norm.get_den() == 1 && nb.norm.get_den() == 1, "non-integral norm");
    check(r.norm_alpha == r.expected_norm_alpha, "N(alpha) = " + r.norm_alpha.get_str());
    check(r.norm_beta == r.expected_norm_beta, "N(beta) = " + r.norm_beta.get_str());
    check(r.trace_alpha == r.expected_trace_alpha, "Tr(alpha) = " + r.trace_alpha.get_str());
    check(r.trace_beta == r.expected_trace_beta, "Tr(beta) = " + r.trace_beta.get_str());
    check(r.norm_beta == r.phi_at_1, "N(beta) != Phi_k(1)");
    check(r.norm_alpha == r.phi_at_minus_1, "N(alpha) != Phi_k(-1)");
    if (r.degree > 2) {
        r.alpha_indecomposable = is_indecomposable(info.alpha, false, nullptr, opt).indecomposable;
        r.beta_indecomposable = is_indecomposable(info.beta, false, nullptr, opt).indecomposable;
        check(*r.alpha_indecomposable && *r.beta_indecomposable, "alpha_k or beta_k is decomposable");
    }
    return r;
}

std::optional<Element> subfield_test(const FieldContext& K, long k, const EnumerationOptions& opt) {
    require_k(k);
    Poly f = minpoly_cos(k);
    if (K.degree() % f.degree() != 0) return std::nullopt;
    if (f.degree() == 1) return K.from_rational(-f.coeff(0));
    // Every conjugate of omega lies in (-2, 2).
    std::optional<Element> first;
    for (const auto& w : enumerate_dominated(K.from_int(4), DominanceMode::SquareDominated, opt)) {
        if (!evaluate(f, w).is_zero()) continue;
        if (first_nonzero_positive(w)) return w;
        if (!first) first = w;
    }
    return first;
}

}  // namespace trqf
