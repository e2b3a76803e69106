#include "trqf/polynomial.hpp"

#include "trqf/error.hpp"

#include <cmath>
#include <sstream>

namespace trqf {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::from_integers(const std::vector<Integer>& coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (const auto& v : coeffs) c.emplace_back(v);
    return Poly(std::move(c));
}

Poly Poly::monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool Poly::has_integer_coeffs() const {
    for (const auto& q : c_)
        if (q.get_den() != 1) return false;
    return true;
}

std::vector<Integer> Poly::integer_coeffs() const {
    std::vector<Integer> out;
    for (const auto& q : c_) {
        if (q.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "polynomial has non-integer coefficients");
        out.push_back(q.get_num());
    }
    return out;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return Poly(std::move(d));
}

Poly Poly::monic() const {
    if (c_.empty()) return *this;
    Rational l = c_.back();
    std::vector<Rational> d = c_;
    for (auto& q : d) q /= l;
    return Poly(std::move(d));
}

Rational Poly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Interval Poly::eval(const Interval& x, unsigned round_bits) const {
    Interval acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + Interval(*it);
        if (round_bits) acc = round_out(acc, round_bits);
    }
    return acc;
}

double Poly::eval(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
}

Poly operator*(const Rational& s, const Poly& a) {
    std::vector<Rational> c = a.c_;
    for (auto& q : c) q *= s;
    return Poly(std::move(c));
}

std::string Poly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rational q = c_[static_cast<std::size_t>(k)];
        if (q == 0) continue;
        bool neg = q < 0;
        Rational m = neg ? Rational(-q) : q;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = (m == 1);
        if (!unit || k == 0) os << trqf::to_string(m);
        if (k >= 1) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {Poly(), a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
    Rational lb = b.lead();
    for (int k = a.degree(); k >= db; --k) {
        Rational f = r[static_cast<std::size_t>(k)] / lb;
        if (f == 0) continue;
        q[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly compose(const Poly& outer, const Poly& inner) {
    Poly acc;
    const auto& c = outer.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * inner + Poly({*it});
    return acc;
}

std::vector<Poly> sturm_sequence(const Poly& p) {
    std::vector<Poly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        Poly r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero()) break;
        // Scale by a positive constant only; keeps denominators small.
        Rational l = abs(r.lead());
        seq.push_back((Rational(-1) / l) * r);
    }
    return seq;
}

int sign_changes_at(const std::vector<Poly>& seq, const Rational& x) {
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int count_real_roots(const std::vector<Poly>& seq, const Rational& a, const Rational& b) {
    return sign_changes_at(seq, a) - sign_changes_at(seq, b);
}

Rational cauchy_bound(const Poly& p) {
    Rational m = 0;
    Rational l = abs(p.lead());
    for (int k = 0; k < p.degree(); ++k) {
        Rational v = abs(p.coeff(static_cast<std::size_t>(k))) / l;
        if (v > m) m = v;
    }
    return m + 1;
}

namespace {

void isolate(const Poly& p, const std::vector<Poly>& seq, const Rational& a, const Rational& b, int count,
             std::vector<Interval>& out) {
    if (count == 0) return;
    if (count == 1) {
        // (a, b] holds exactly one root; shrink until it is a sign-change interval.
        Rational lo = a, hi = b;
        while (true) {
            if (p.eval(hi) == 0) {
                out.emplace_back(hi, hi);
                return;
            }
            if (p.eval(lo) != 0) {
                out.emplace_back(lo, hi);
                return;
            }
            Rational m = (lo + hi) / 2;
            if (count_real_roots(seq, m, hi) == 1)
                lo = m;
            else
                hi = m;
        }
    }
    Rational m = (a + b) / 2;
    int left = count_real_roots(seq, a, m);
    isolate(p, seq, a, m, left, out);
    isolate(p, seq, m, b, count - left, out);
}

}  // namespace

std::vector<Interval> isolate_real_roots(const Poly& p) {
    if (p.degree() <= 0) return {};
    auto seq = sturm_sequence(p);
    Rational R = cauchy_bound(p);
    // Round R up to a power of two so bisection points stay dyadic.
    Integer r2 = 1;
    while (Rational(r2) < R) r2 *= 2;
    Rational lo = -Rational(r2), hi = Rational(r2);
    int total = count_real_roots(seq, lo, hi);
    std::vector<Interval> out;
    isolate(p, seq, lo, hi, total, out);
    return out;
}

Interval refine_root(const Poly& p, Interval iv, unsigned bits) {
    if (iv.lo == iv.hi) return iv;
    Rational target(1, Integer(1) << bits);
    int slo = sgn(p.eval(iv.lo));
    while (iv.width() > target) {
        Rational m = iv.mid();
        int sm = sgn(p.eval(m));
        if (sm == 0) return Interval(m, m);
        if (sm == slo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

}  // namespace trqf
