#include "trqf/mpoly.hpp"

#include <algorithm>

namespace trqf {

MPoly::MPoly(FieldContext K, std::vector<std::string> names) : K_(std::move(K)), names_(std::move(names)) {}

MPoly MPoly::constant(const FieldContext& K, const std::vector<std::string>& names, const Element& c) {
    MPoly p(K, names);
    p.add_term(Exponents(names.size(), 0), c);
    return p;
}

MPoly MPoly::variable(const FieldContext& K, const std::vector<std::string>& names, std::size_t i) {
    if (i >= names.size()) throw Error(ErrorCode::InvalidArgument, "no such indeterminate");
    MPoly p(K, names);
    Exponents e(names.size(), 0);
    e[i] = 1;
    p.add_term(e, K.one());
    return p;
}

MPoly MPoly::variable(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw Error(ErrorCode::InvalidArgument, "no indeterminate named " + name);
    return variable(static_cast<std::size_t>(it - names_.begin()));
}

void MPoly::add_term(const Exponents& e, const Element& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    if (a.names_.empty()) return b;
    MPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

MPoly operator-(const MPoly& a) {
    MPoly r(a.K_, a.names_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.K_, a.names_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MPoly::Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly MPoly::reduce(const Exponents& lhs, const Element& rhs) const {
    MPoly cur = *this;
    while (true) {
        MPoly next(K_, names_);
        bool changed = false;
        for (const auto& [e, c] : cur.terms_) {
            bool divisible = true;
            for (std::size_t i = 0; i < e.size(); ++i) divisible = divisible && e[i] >= lhs[i];
            if (divisible && std::any_of(lhs.begin(), lhs.end(), [](int x) { return x > 0; })) {
                Exponents q(e.size());
                for (std::size_t i = 0; i < e.size(); ++i) q[i] = e[i] - lhs[i];
                next.add_term(q, c * rhs);
                changed = true;
            } else {
                next.add_term(e, c);
            }
        }
        cur = std::move(next);
        if (!changed) return cur;
    }
}

MPoly MPoly::strip_monomial() const {
    if (terms_.empty()) return *this;
    Exponents g = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], e[i]);
    MPoly r(K_, names_);
    for (const auto& [e, c] : terms_) {
        Exponents q(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) q[i] = e[i] - g[i];
        r.add_term(q, c);
    }
    return r;
}

Element MPoly::evaluate(const std::vector<Element>& values) const {
    if (values.size() != names_.size()) throw Error(ErrorCode::InvalidArgument, "wrong number of values");
    Element s = K_.zero();
    for (const auto& [e, c] : terms_) {
        Element t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t = t * values[i].pow(e[i]);
        s = s + t;
    }
    return s;
}

Element MPoly::evaluate_even(const std::vector<Element>& values, std::size_t var, const Element& square) const {
    Element s = K_.zero();
    for (const auto& [e, c] : terms_) {
        if (e[var] % 2) throw Error(ErrorCode::InvalidArgument, names_[var] + " occurs to an odd power");
        Element t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            t = t * (i == var ? square.pow(e[i] / 2) : values[i].pow(e[i]));
        }
        s = s + t;
    }
    return s;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest total degree first.
    std::vector<std::pair<Exponents, Element>> ts(terms_.begin(), terms_.end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        int da = 0, db = 0;
        for (int x : a.first) da += x;
        for (int x : b.first) db += x;
        if (da != db) return da > db;
        return a.first > b.first;
    });
    for (const auto& [e, c] : ts) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += names_[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string coef = pretty(c);
        bool compound = coef.find_first_of("+-", 1) != std::string::npos;
        std::string term;
        if (mono.empty()) {
            term = coef;
        } else if (coef == "1") {
            term = mono;
        } else if (coef == "-1") {
            term = "-" + mono;
        } else {
            term = (compound ? "(" + coef + ")" : coef) + "*" + mono;
        }
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

std::string MPoly::identity_string() const {
    MPoly lhs(K_, names_), rhs(K_, names_);
    for (const auto& [e, c] : terms_) {
        bool positive = K_.degree() == 1 ? c.coords()[0] > 0 : K_.totally_positive(c);
        if (positive)
            lhs.add_term(e, c);
        else
            rhs.add_term(e, -c);
    }
    return lhs.to_string() + " = " + rhs.to_string();
}

MPoly det(const std::vector<std::vector<MPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    if (n == 1) return m[0][0];
    MPoly s = m[0][0] - m[0][0];
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<MPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<MPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        MPoly t = m[0][j] * det(minor);
        s = (j % 2) ? s - t : s + t;
    }
    return s;
}

namespace {

std::string join_terms(const Rational& a, const Rational& b, const std::string& unit) {
    std::string out;
    if (a != 0) out = to_string(a);
    if (b != 0) {
        std::string coef = b == 1 ? "" : b == -1 ? "-" : to_string(b) + "*";
        std::string term = coef + unit;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += term;
        else
            out += "+" + term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string pretty(const Element& a) {
    FieldContext K = a.field();
    if (K.degree() == 1) return to_string(K.to_power_basis(a)[0]);
    auto s = K.sqrt2();
    if (K.degree() == 2 && s) {
        auto pa = K.to_power_basis(a), ps = K.to_power_basis(*s);
        Rational b = pa[1] / ps[1];
        Rational c = pa[0] - b * ps[0];
        return join_terms(c, b, "sqrt2");
    }
    return a.to_string();
}

}  // namespace trqf
