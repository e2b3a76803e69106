#include "trqf/numberfield.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace trqf {

namespace detail {

struct FieldData {
    FieldRecord record;
    int d = 0;
    Poly poly;
    std::vector<std::vector<Rational>> basis;      // rows: b_j in power coordinates
    std::vector<std::vector<Rational>> basis_inv;  // power coordinates -> basis coordinates
    std::vector<std::vector<std::vector<Integer>>> mult;
    std::vector<Integer> one;
    std::vector<Interval> roots;
    std::vector<std::vector<double>> emb;
    std::vector<std::vector<double>> emb_err;
    std::vector<ElementData> dual;  // trace-dual basis
    std::vector<ElementData> units;

    mutable std::mutex mu;
    mutable std::vector<Interval> refined;
    mutable unsigned refined_bits = 0;

    std::vector<Interval> roots_at(unsigned bits) const {
        std::lock_guard<std::mutex> lock(mu);
        if (refined_bits < bits) {
            if (refined.empty()) refined = roots;
            for (auto& iv : refined) iv = refine_root(poly, iv, bits);
            refined_bits = bits;
        }
        return refined;
    }
};

}  // namespace detail

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Integer lcm_of_denominators(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& q : v) l = lcm(l, q.get_den());
    return l;
}

// Basis coordinates (numerators, common denominator) of a power-basis vector.
std::pair<std::vector<Integer>, Integer> power_to_basis(const detail::FieldData& F, const std::vector<Rational>& p) {
    std::vector<Rational> y(F.d, Rational(0));
    for (int k = 0; k < F.d && k < static_cast<int>(p.size()); ++k) {
        if (p[k] == 0) continue;
        for (int j = 0; j < F.d; ++j) y[j] += p[k] * F.basis_inv[k][j];
    }
    Integer den = lcm_of_denominators(y);
    std::vector<Integer> c(F.d);
    for (int j = 0; j < F.d; ++j) {
        Rational t = y[j] * den;
        c[j] = t.get_num();
    }
    return {c, den};
}

Matrix invert(const Matrix& m) {
    std::size_t n = m.size();
    Matrix a = m;
    Matrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw Error(ErrorCode::Singular, "matrix is singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational piv = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// Power-basis product reduced modulo the defining polynomial.
std::vector<Rational> mulmod(const std::vector<Rational>& a, const std::vector<Rational>& b, const Poly& f) {
    Poly r = (Poly(a) * Poly(b)) % f;
    std::vector<Rational> out(static_cast<std::size_t>(f.degree()), Rational(0));
    for (std::size_t k = 0; k < r.coeffs().size(); ++k) out[k] = r.coeffs()[k];
    return out;
}

double round_up_double(const Rational& q) {
    double v = q.get_d();
    double r = std::nextafter(std::abs(v), std::numeric_limits<double>::infinity());
    return r * (1.0 + 1e-15) + std::numeric_limits<double>::denorm_min();
}

unsigned bits_for(const Rational& precision) {
    if (precision <= 0) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
    unsigned b = 0;
    Rational p = precision;
    while (p < 1) {
        p *= 2;
        ++b;
    }
    return b;
}

}  // namespace

// ---------------------------------------------------------------- Element

Element::Element(std::shared_ptr<const detail::FieldData> f, std::vector<Integer> c, Integer den)
    : field_(std::move(f)), coords_(std::move(c)), denom_(std::move(den)) {
    canonicalize();
}

void Element::canonicalize() {
    if (denom_ == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    if (denom_ < 0) {
        denom_ = -denom_;
        for (auto& c : coords_) c = -c;
    }
    if (denom_ == 1) return;
    Integer g = denom_;
    for (const auto& c : coords_) {
        if (g == 1) break;
        g = gcd(g, c);
    }
    if (g != 1) {
        denom_ /= g;
        for (auto& c : coords_) c /= g;
    }
}

bool Element::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

bool Element::is_rational() const {
    if (!field_) return false;
    // Rational iff a multiple of the coordinates of 1.
    const auto& one = field_->one;
    std::size_t piv = 0;
    while (piv < one.size() && one[piv] == 0) ++piv;
    Rational s(coords_[piv], one[piv]);
    for (std::size_t j = 0; j < one.size(); ++j)
        if (Rational(coords_[j]) != s * one[j]) return false;
    return true;
}

FieldContext Element::field() const { return FieldContext(field_); }

static void require_same(const Element& a, const Element& b) {
    if (!a.valid() || !b.valid()) throw Error(ErrorCode::InvalidArgument, "uninitialized element");
    if (a.field().same_field(b.field())) return;
    throw Error(ErrorCode::InvalidArgument, "elements belong to different fields");
}

Element operator+(const Element& a, const Element& b) {
    require_same(a, b);
    std::vector<Integer> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] * b.denom_ + b.coords_[i] * a.denom_;
    return Element(a.field_, std::move(c), a.denom_ * b.denom_);
}

Element operator-(const Element& a, const Element& b) {
    require_same(a, b);
    std::vector<Integer> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] * b.denom_ - b.coords_[i] * a.denom_;
    return Element(a.field_, std::move(c), a.denom_ * b.denom_);
}

Element operator-(const Element& a) {
    std::vector<Integer> c = a.coords_;
    for (auto& x : c) x = -x;
    return Element(a.field_, std::move(c), a.denom_);
}

Element operator*(const Element& a, const Element& b) {
    require_same(a, b);
    const auto& F = *a.field_;
    std::vector<Integer> c(F.d, Integer(0));
    for (int i = 0; i < F.d; ++i) {
        if (a.coords_[i] == 0) continue;
        for (int j = 0; j < F.d; ++j) {
            if (b.coords_[j] == 0) continue;
            Integer p = a.coords_[i] * b.coords_[j];
            const auto& t = F.mult[i][j];
            for (int k = 0; k < F.d; ++k)
                if (t[k] != 0) c[k] += p * t[k];
        }
    }
    return Element(a.field_, std::move(c), a.denom_ * b.denom_);
}

Element operator*(const Rational& s, const Element& a) {
    std::vector<Integer> c = a.coords_;
    for (auto& x : c) x *= s.get_num();
    return Element(a.field_, std::move(c), a.denom_ * s.get_den());
}

Element operator/(const Element& a, const Element& b) {
    require_same(a, b);
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero element");
    FieldContext K = a.field();
    auto Mb = K.mult_matrix_numerator(b);
    int d = K.degree();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = Mb[i][j];
    std::vector<Rational> rhs(d);
    for (int i = 0; i < d; ++i) rhs[i] = Rational(a.coords_[i] * b.denom_, a.denom_);
    for (auto& q : rhs) q.canonicalize();
    auto y = solve_rational(std::move(m), std::move(rhs));
    Integer den = lcm_of_denominators(y);
    std::vector<Integer> c(d);
    for (int i = 0; i < d; ++i) c[i] = Rational(y[i] * den).get_num();
    return Element(a.field_, std::move(c), den);
}

bool operator==(const Element& a, const Element& b) {
    return a.denom_ == b.denom_ && a.coords_ == b.coords_;
}

bool operator<(const Element& a, const Element& b) {
    if (a.coords_ != b.coords_) return a.coords_ < b.coords_;
    return a.denom_ < b.denom_;
}

Element Element::pow(long e) const {
    FieldContext K(field_);
    if (e < 0) return inverse().pow(-e);
    Element result = K.one();
    Element base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Element Element::inverse() const { return FieldContext(field_).one() / *this; }

std::string Element::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i].get_str();
    os << "]";
    if (denom_ != 1) os << "/" << denom_.get_str();
    return os.str();
}

std::string_view to_string(Dominance d) {
    switch (d) {
        case Dominance::Greater: return "greater";
        case Dominance::Equal: return "equal";
        case Dominance::Less: return "less";
        case Dominance::Incomparable: return "incomparable";
    }
    return "?";
}

// ---------------------------------------------------------------- linear algebra

Integer det_bareiss(std::vector<std::vector<Integer>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
    std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw Error(ErrorCode::Singular, "linear system is singular");
        std::swap(m[p], m[c]);
        std::swap(rhs[p], rhs[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
            rhs[r] -= f * rhs[c];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

Poly charpoly_rational(std::vector<std::vector<Rational>> H) {
    int n = static_cast<int>(H.size());
    for (int m = 1; m + 1 < n; ++m) {
        int i = m;
        while (i < n && H[i][m - 1] == 0) ++i;
        if (i == n) continue;
        if (i != m) {
            std::swap(H[i], H[m]);
            for (int r = 0; r < n; ++r) std::swap(H[r][i], H[r][m]);
        }
        const Rational t = H[m][m - 1];
        for (int j = m + 1; j < n; ++j) {
            if (H[j][m - 1] == 0) continue;
            Rational u = H[j][m - 1] / t;
            for (int k = 0; k < n; ++k) H[j][k] -= u * H[m][k];
            for (int k = 0; k < n; ++k) H[k][m] += u * H[k][j];
        }
    }
    std::vector<Poly> p(n + 1);
    p[0] = Poly({Rational(1)});
    Poly x = Poly::x();
    for (int m = 1; m <= n; ++m) {
        p[m] = (x - Poly({H[m - 1][m - 1]})) * p[m - 1];
        Rational t = 1;
        for (int i = 1; i <= m - 1; ++i) {
            t *= H[m - i][m - i - 1];
            if (t == 0) break;
            p[m] = p[m] - (t * H[m - i - 1][m - 1]) * p[m - i - 1];
        }
    }
    return p[n];
}

// ---------------------------------------------------------------- FieldContext

FieldContext FieldContext::load(const FieldRecord& rec) {
    auto F = std::make_shared<detail::FieldData>();
    F->record = rec;
    int d = rec.degree;
    if (d < 1) throw Error(ErrorCode::InvalidArgument, rec.label + ": degree must be positive");
    if (static_cast<int>(rec.poly.size()) != d + 1)
        throw Error(ErrorCode::InvalidArgument, rec.label + ": polynomial degree does not match field degree");
    if (rec.poly.back() != 1) throw Error(ErrorCode::InvalidArgument, rec.label + ": polynomial is not monic");
    F->d = d;
    F->poly = Poly::from_integers(rec.poly);

    if (gcd(F->poly, F->poly.derivative()).degree() > 0)
        throw Error(ErrorCode::NotTotallyReal, rec.label + ": polynomial has repeated roots");
    F->roots = isolate_real_roots(F->poly);
    if (static_cast<int>(F->roots.size()) != d)
        throw Error(ErrorCode::NotTotallyReal, rec.label + ": only " + std::to_string(F->roots.size()) + " of " +
                                                   std::to_string(d) + " roots are real");

    if (static_cast<int>(rec.basis.size()) != d)
        throw Error(ErrorCode::BadBasis, rec.label + ": basis must have " + std::to_string(d) + " rows");
    for (const auto& row : rec.basis)
        if (static_cast<int>(row.size()) != d) throw Error(ErrorCode::BadBasis, rec.label + ": basis row has wrong length");
    F->basis = rec.basis;
    try {
        F->basis_inv = invert(F->basis);
    } catch (const Error&) {
        throw Error(ErrorCode::BadBasis, rec.label + ": basis matrix is singular");
    }

    auto one = power_to_basis(*F, {Rational(1)});
    if (one.second != 1) throw Error(ErrorCode::NotARing, rec.label + ": 1 is not in the span of the basis");
    F->one = one.first;

    F->mult.assign(d, std::vector<std::vector<Integer>>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (j < i) {
                F->mult[i][j] = F->mult[j][i];
                continue;
            }
            auto prod = mulmod(F->basis[i], F->basis[j], F->poly);
            auto [c, den] = power_to_basis(*F, prod);
            if (den != 1)
                throw Error(ErrorCode::NotARing, rec.label + ": product of basis elements " + std::to_string(i) +
                                                     " and " + std::to_string(j) + " is not integral");
            F->mult[i][j] = c;
        }
    }

    // Trace form and its determinant.
    std::vector<Integer> tr(d, Integer(0));
    {
        FieldContext tmp(F);
        for (int j = 0; j < d; ++j) tr[j] = tmp.trace(tmp.basis_element(j)).get_num();
    }
    std::vector<std::vector<Integer>> T(d, std::vector<Integer>(d, Integer(0)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) T[i][j] += F->mult[i][j][k] * tr[k];
    Integer disc = det_bareiss(T);
    if (rec.disc != 0 && disc != rec.disc)
        throw Error(ErrorCode::BadDiscriminant,
                    rec.label + ": discriminant of the basis is " + disc.get_str() + ", record says " + rec.disc.get_str());
    F->record.disc = disc;

    Matrix Tq(d, std::vector<Rational>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) Tq[i][j] = T[i][j];
    Matrix Tinv = invert(Tq);
    F->dual.resize(d);
    for (int j = 0; j < d; ++j) {
        Integer den = lcm_of_denominators(Tinv[j]);
        ElementData e;
        e.denom = den;
        for (int k = 0; k < d; ++k) e.coords.push_back(Rational(Tinv[j][k] * den).get_num());
        F->dual[j] = e;
    }

    // Double approximations of sigma_i(b_j) with certified error.
    {
        auto roots = F->roots_at(96);
        F->emb.assign(d, std::vector<double>(d));
        F->emb_err.assign(d, std::vector<double>(d));
        for (int j = 0; j < d; ++j) {
            Poly bj(F->basis[j]);
            for (int i = 0; i < d; ++i) {
                Interval v = bj.eval(roots[i], 128);
                Rational mid = v.mid();
                double m = mid.get_d();
                Rational err = v.width() / 2 + abs(mid - Rational(m));
                F->emb[i][j] = m;
                F->emb_err[i][j] = round_up_double(err);
            }
        }
    }

    if (rec.h <= 0) throw Error(ErrorCode::ValidationError, rec.label + ": class number must be positive");
    if (rec.h_plus != 0) {
        if (rec.h_plus % rec.h != 0)
            throw Error(ErrorCode::ValidationError, rec.label + ": h does not divide h_plus");
        long q = rec.h_plus / rec.h;
        if ((q & (q - 1)) != 0)
            throw Error(ErrorCode::ValidationError, rec.label + ": h_plus/h is not a power of 2");
    }

    FieldContext K(F);
    for (const auto& u : rec.units) {
        if (static_cast<int>(u.coords.size()) != d)
            throw Error(ErrorCode::ValidationError, rec.label + ": unit has wrong number of coordinates");
        Element e = K.make(u);
        if (!K.is_unit(e)) throw Error(ErrorCode::ValidationError, rec.label + ": listed unit " + e.to_string() + " is not a unit");
    }
    F->units = rec.units;
    if (rec.sqrt2) {
        if (static_cast<int>(rec.sqrt2->size()) != d)
            throw Error(ErrorCode::ValidationError, rec.label + ": sqrt2 tag has wrong number of coordinates");
        Element s = K.make(*rec.sqrt2);
        if (s * s != K.from_int(2)) throw Error(ErrorCode::ValidationError, rec.label + ": sqrt2 tag does not square to 2");
    }
    return K;
}

const FieldRecord& FieldContext::record() const { return data_->record; }
int FieldContext::degree() const { return data_->d; }
const Poly& FieldContext::poly() const { return data_->poly; }
const std::vector<Integer>& FieldContext::mult(int i, int j) const { return data_->mult[i][j]; }
const std::vector<Interval>& FieldContext::root_intervals() const { return data_->roots; }

Element FieldContext::zero() const { return Element(data_, std::vector<Integer>(data_->d, Integer(0)), 1); }
Element FieldContext::one() const { return Element(data_, data_->one, 1); }

Element FieldContext::from_int(const Integer& n) const {
    std::vector<Integer> c = data_->one;
    for (auto& x : c) x *= n;
    return Element(data_, std::move(c), 1);
}

Element FieldContext::from_rational(const Rational& q) const {
    std::vector<Integer> c = data_->one;
    for (auto& x : c) x *= q.get_num();
    return Element(data_, std::move(c), q.get_den());
}

Element FieldContext::basis_element(int j) const {
    std::vector<Integer> c(data_->d, Integer(0));
    c[j] = 1;
    return Element(data_, std::move(c), 1);
}

Element FieldContext::make(std::vector<Integer> coords, Integer denom) const {
    if (static_cast<int>(coords.size()) != data_->d)
        throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(data_->d) + " coordinates");
    return Element(data_, std::move(coords), std::move(denom));
}

Element FieldContext::from_power_basis(const std::vector<Rational>& coeffs) const {
    std::vector<Rational> p(data_->d, Rational(0));
    Poly r = Poly(coeffs) % data_->poly;
    for (std::size_t k = 0; k < r.coeffs().size(); ++k) p[k] = r.coeffs()[k];
    auto [c, den] = power_to_basis(*data_, p);
    return Element(data_, c, den);
}

std::vector<Rational> FieldContext::to_power_basis(const Element& a) const {
    int d = data_->d;
    std::vector<Rational> p(d, Rational(0));
    for (int j = 0; j < d; ++j) {
        if (a.coords()[j] == 0) continue;
        for (int k = 0; k < d; ++k) p[k] += a.coords()[j] * data_->basis[j][k];
    }
    for (auto& q : p) q /= a.denom();
    return p;
}

std::optional<Element> FieldContext::sqrt2() const {
    if (!data_->record.sqrt2) return std::nullopt;
    return make(*data_->record.sqrt2);
}

std::vector<std::vector<Integer>> FieldContext::mult_matrix_numerator(const Element& a) const {
    int d = data_->d;
    std::vector<std::vector<Integer>> M(d, std::vector<Integer>(d, Integer(0)));
    for (int i = 0; i < d; ++i) {
        const Integer& c = a.coords()[i];
        if (c == 0) continue;
        for (int j = 0; j < d; ++j) {
            const auto& t = data_->mult[i][j];
            for (int k = 0; k < d; ++k)
                if (t[k] != 0) M[k][j] += c * t[k];
        }
    }
    return M;
}

NormTrace FieldContext::norm_trace(const Element& a) const {
    auto M = mult_matrix_numerator(a);
    int d = data_->d;
    Integer tr = 0;
    for (int i = 0; i < d; ++i) tr += M[i][i];
    Integer det = det_bareiss(M);
    Integer dd;
    mpz_pow_ui(dd.get_mpz_t(), a.denom().get_mpz_t(), static_cast<unsigned long>(d));
    Rational n(det, dd), t(tr, a.denom());
    n.canonicalize();
    t.canonicalize();
    return {n, t};
}

Poly FieldContext::charpoly(const Element& a) const {
    auto M = mult_matrix_numerator(a);
    int d = data_->d;
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = Rational(M[i][j], a.denom());
    for (auto& row : m)
        for (auto& q : row) q.canonicalize();
    return charpoly_rational(std::move(m));
}

std::vector<Interval> FieldContext::embed(const Element& a, const Rational& precision) const {
    int d = data_->d;
    Poly p(to_power_basis(a));
    unsigned bits = bits_for(precision) + 8;
    while (true) {
        auto roots = data_->roots_at(bits);
        std::vector<Interval> out(d);
        bool ok = true;
        for (int i = 0; i < d; ++i) {
            out[i] = p.eval(roots[i], bits + 16);
            if (out[i].width() > precision) ok = false;
        }
        if (ok) return out;
        bits = bits * 2;
        if (bits > 1u << 16) throw Error(ErrorCode::InvalidArgument, "embedding precision not reachable");
    }
}

Interval FieldContext::house(const Element& a, const Rational& precision) const {
    auto v = embed(a, precision);
    Interval h(0);
    for (const auto& iv : v) {
        Interval m = abs(iv);
        h.lo = std::max(h.lo, m.lo);
        h.hi = std::max(h.hi, m.hi);
    }
    return h;
}

std::optional<ApproxEmbedding> FieldContext::approx_embed(const Element& a) const {
    int d = data_->d;
    static const Integer limit = Integer(1) << 52;
    std::vector<double> c(d);
    for (int j = 0; j < d; ++j) {
        if (abs(a.coords()[j]) >= limit) return std::nullopt;
        c[j] = a.coords()[j].get_d();
    }
    if (a.denom() >= limit) return std::nullopt;
    double den = a.denom().get_d();
    const double u = std::ldexp(1.0, -53);
    const double gamma = (d + 2) * u / (1 - (d + 2) * u);
    ApproxEmbedding out;
    out.mid.resize(d);
    out.rad.resize(d);
    for (int i = 0; i < d; ++i) {
        double s = 0, err = 0, mag = 0;
        for (int j = 0; j < d; ++j) {
            if (c[j] == 0) continue;
            s += c[j] * data_->emb[i][j];
            err += std::abs(c[j]) * data_->emb_err[i][j];
            mag += std::abs(c[j] * data_->emb[i][j]);
        }
        double r = (err + gamma * mag) * (1 + 4 * u);
        out.mid[i] = s / den;
        out.rad[i] = (r / den + std::abs(out.mid[i]) * 2 * u) * (1 + 4 * u) + std::numeric_limits<double>::denorm_min();
    }
    return out;
}

const std::vector<std::vector<double>>& FieldContext::basis_embedding() const { return data_->emb; }
const std::vector<std::vector<double>>& FieldContext::basis_embedding_error() const { return data_->emb_err; }

std::vector<Element> FieldContext::dual_basis() const {
    std::vector<Element> out;
    for (const auto& e : data_->dual) out.push_back(make(e));
    return out;
}

std::vector<std::vector<Interval>> FieldContext::dual_basis_embedding(unsigned bits) const {
    int d = data_->d;
    std::vector<std::vector<Interval>> out(d, std::vector<Interval>(d));
    Rational prec(1, Integer(1) << bits);
    for (int j = 0; j < d; ++j) {
        auto v = embed(make(data_->dual[j]), prec);
        for (int i = 0; i < d; ++i) out[i][j] = v[i];
    }
    return out;
}

Dominance FieldContext::compare(const Element& a, const Element& b) const {
    Element c = a - b;
    if (c.is_zero()) return Dominance::Equal;
    if (auto ap = approx_embed(c)) {
        bool pos = false, neg = false, unknown = false;
        for (std::size_t i = 0; i < ap->mid.size(); ++i) {
            if (ap->mid[i] - ap->rad[i] > 0)
                pos = true;
            else if (ap->mid[i] + ap->rad[i] < 0)
                neg = true;
            else
                unknown = true;
        }
        if (pos && neg) return Dominance::Incomparable;
        if (!unknown) return pos ? Dominance::Greater : Dominance::Less;
    }
    // Exact: every conjugate of c is a root of its characteristic polynomial,
    // all of which are real and nonzero.
    Poly p = charpoly(c);
    int d = p.degree();
    bool all_neg = true, all_pos = true;
    for (int k = 0; k <= d; ++k) {
        int s = sgn(p.coeff(static_cast<std::size_t>(k)));
        if (s <= 0) all_neg = false;
        int alt = ((d + k) % 2 == 0) ? s : -s;
        if (alt <= 0) all_pos = false;
    }
    if (all_pos) return Dominance::Greater;
    if (all_neg) return Dominance::Less;
    return Dominance::Incomparable;
}

bool FieldContext::totally_positive(const Element& a) const { return compare(a, zero()) == Dominance::Greater; }

bool FieldContext::totally_nonnegative(const Element& a) const {
    auto c = compare(a, zero());
    return c == Dominance::Greater || c == Dominance::Equal;
}

Signature FieldContext::signature(const Element& a) const {
    if (a.is_zero()) throw Error(ErrorCode::InvalidArgument, "signature of zero is undefined");
    int d = data_->d;
    Signature s;
    s.signs.assign(d, 0);
    if (auto ap = approx_embed(a)) {
        bool done = true;
        for (int i = 0; i < d; ++i) {
            if (ap->mid[i] - ap->rad[i] > 0)
                s.signs[i] = 1;
            else if (ap->mid[i] + ap->rad[i] < 0)
                s.signs[i] = -1;
            else
                done = false;
        }
        if (done) return s;
    }
    Rational prec(1, 1 << 20);
    while (true) {
        auto v = embed(a, prec);
        bool done = true;
        for (int i = 0; i < d; ++i) {
            if (v[i].positive())
                s.signs[i] = 1;
            else if (v[i].negative())
                s.signs[i] = -1;
            else
                done = false;
        }
        if (done) return s;
        prec = prec * prec;
    }
}

bool FieldContext::is_unit(const Element& a) const {
    if (!a.is_integral() || a.is_zero()) return false;
    return abs(norm(a)) == 1;
}

std::vector<Element> FieldContext::units() const {
    std::vector<Element> out;
    for (const auto& u : data_->units) out.push_back(make(u));
    return out;
}

std::vector<Element> FieldContext::fundamental_units() const {
    std::vector<Element> out;
    for (const auto& u : units())
        if (u != one() && u != -one()) out.push_back(u);
    return out;
}

Associate FieldContext::totally_positive_associate(const Element& a, const std::vector<Element>& gens) const {
    if (a.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero has no totally positive associate");
    auto target = signature(a);
    std::vector<Signature> gs;
    for (const auto& g : gens) gs.push_back(signature(g));
    int d = data_->d;
    std::size_t m = gens.size();
    if (m > 20) throw Error(ErrorCode::InvalidArgument, "too many unit generators");
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            int s = 1;
            for (std::size_t g = 0; g < m; ++g)
                if (mask >> g & 1) s *= gs[g].signs[i];
            ok = (s == target.signs[i]);
        }
        if (!ok) continue;
        Element eta = one();
        for (std::size_t g = 0; g < m; ++g)
            if (mask >> g & 1) eta = eta * gens[g];
        return {eta, eta * a};
    }
    throw Error(ErrorCode::NoSuchUnit, "no product of the given units has the signature of " + a.to_string());
}

FieldContext FieldContext::rationals() {
    static const FieldContext K = [] {
        FieldRecord r;
        r.label = "1.1.1.1";
        r.degree = 1;
        r.poly = {0, 1};
        r.basis = {{Rational(1)}};
        r.disc = 1;
        r.h = 1;
        r.h_plus = 1;
        r.units = {ElementData{{Integer(-1)}, 1}};
        return load(r);
    }();
    return K;
}

FieldContext FieldContext::q_sqrt2() {
    static const FieldContext K = [] {
        FieldRecord r;
        r.label = "2.2.8.1";
        r.degree = 2;
        r.poly = {-2, 0, 1};
        r.basis = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
        r.disc = 8;
        r.h = 1;
        r.h_plus = 1;
        r.units = {ElementData{{Integer(-1), Integer(0)}, 1}, ElementData{{Integer(1), Integer(1)}, 1}};
        r.sqrt2 = std::vector<Integer>{0, 1};
        return load(r);
    }();
    return K;
}

Dominance compare_dominance(const Element& a, const Element& b) { return a.field().compare(a, b); }

// ---------------------------------------------------------------- parsing

namespace {

class ExprParser {
public:
    ExprParser(const FieldContext& K, const std::string& s) : K_(K), s_(s) {}

    Element parse() {
        Element e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        throw Error(ErrorCode::ParseError, "cannot parse element '" + s_ + "': " + why);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(const std::string& tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    Element expr() {
        Element a = term();
        while (true) {
            if (eat("+"))
                a = a + term();
            else if (eat("-"))
                a = a - term();
            else
                return a;
        }
    }
    Element term() {
        Element a = unary();
        while (true) {
            if (eat("*"))
                a = a * unary();
            else if (eat("/"))
                a = a / unary();
            else
                return a;
        }
    }
    Element unary() {
        if (eat("-")) return -unary();
        if (eat("+")) return unary();
        Element a = power();
        return a;
    }
    Element power() {
        Element a = atom();
        if (eat("^")) {
            skip();
            bool neg = eat("-");
            long e = integer_literal();
            a = a.pow(neg ? -e : e);
        }
        return a;
    }
    long integer_literal() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(s_.substr(start, pos_ - start));
    }
    Element atom() {
        skip();
        if (eat("(")) {
            Element e = expr();
            if (!eat(")")) fail("missing ')'");
            return e;
        }
        if (eat("[")) {
            std::vector<Integer> c;
            do {
                skip();
                bool neg = eat("-");
                std::size_t start = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (start == pos_) fail("expected coordinate");
                Integer v(s_.substr(start, pos_ - start));
                c.push_back(neg ? Integer(-v) : v);
            } while (eat(","));
            if (!eat("]")) fail("missing ']'");
            if (static_cast<int>(c.size()) != K_.degree()) fail("coordinate literal has wrong length");
            return K_.make(std::move(c));
        }
        if (eat("sqrt2") || eat("√2")) {
            auto s = K_.sqrt2();
            if (!s) fail("field has no sqrt2 tag");
            return *s;
        }
        if (pos_ < s_.size() && s_[pos_] == 'b') {
            ++pos_;
            long j = integer_literal();
            if (j < 0 || j >= K_.degree()) fail("basis index out of range");
            return K_.basis_element(static_cast<int>(j));
        }
        if (eat("x")) return K_.from_power_basis({Rational(0), Rational(1)});
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return K_.from_int(Integer(s_.substr(start, pos_ - start)));
        }
        fail(pos_ < s_.size() ? "unexpected '" + s_.substr(pos_, 1) + "'" : "unexpected end of input");
    }

    const FieldContext& K_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(const FieldContext& K, const std::string& text) { return ExprParser(K, text).parse(); }

}  // namespace trqf
