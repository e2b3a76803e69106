#include "trqf/bigint.hpp"

#include "trqf/error.hpp"

#include <algorithm>
#include <cctype>

namespace trqf {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotTotallyReal: return "NotTotallyReal";
        case ErrorCode::NotARing: return "NotARing";
        case ErrorCode::BadBasis: return "BadBasis";
        case ErrorCode::BadDiscriminant: return "BadDiscriminant";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::NoSuchUnit: return "NoSuchUnit";
        case ErrorCode::MissingData: return "MissingData";
        case ErrorCode::BoxTooLarge: return "BoxTooLarge";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::UnexpectedSingularCase: return "UnexpectedSingularCase";
        case ErrorCode::UnclassifiedCase: return "UnclassifiedCase";
        case ErrorCode::UnsupportedK: return "UnsupportedK";
        case ErrorCode::MismatchAgainstFormula: return "MismatchAgainstFormula";
        case ErrorCode::PoolExhausted: return "PoolExhausted";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IdentityMismatch: return "IdentityMismatch";
    }
    return "Unknown";
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    auto strip_plus = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return t;
    };
    auto slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
        throw Error(ErrorCode::ParseError, "malformed rational '" + text + "'");
    Integer n(strip_plus(num)), d(strip_plus(den));
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n) {
    Integer m = abs(n);
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "cannot factor 0");
    Integer limit = Integer(1) << 62;
    if (m > limit) throw Error(ErrorCode::InvalidArgument, "integer too large to factor: " + m.get_str());
    std::vector<std::pair<Integer, unsigned>> out;
    auto strip = [&](const Integer& p) {
        unsigned e = 0;
        while (divides(p, m)) {
            m /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Integer p = 5; p * p <= m; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> out{1};
    for (const auto& [p, e] : factor_integer(n)) {
        std::vector<Integer> next;
        for (const auto& d : out) {
            Integer pk = 1;
            for (unsigned k = 0; k <= e; ++k) {
                next.push_back(d * pk);
                pk *= p;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Integer isqrt_ceil(const Integer& n) {
    if (n <= 0) return 0;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) r += 1;
    return r;
}

// sqrt(q) = sqrt(num*den)/den; scale by 2^bits before taking integer roots.
Rational sqrt_lower(const Rational& q, unsigned bits) {
    if (q <= 0) return 0;
    Integer scale = Integer(1) << bits;
    Integer radicand = q.get_num() * q.get_den() * scale * scale;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), radicand.get_mpz_t());
    Rational out(r, q.get_den() * scale);
    out.canonicalize();
    return out;
}

Rational sqrt_upper(const Rational& q, unsigned bits) {
    if (q <= 0) return 0;
    Integer scale = Integer(1) << bits;
    Integer radicand = q.get_num() * q.get_den() * scale * scale;
    Rational out(isqrt_ceil(radicand), q.get_den() * scale);
    out.canonicalize();
    return out;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace trqf
