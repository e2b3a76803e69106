#include "trqf/quadlattice.hpp"

#include "trqf/zlattice.hpp"

#include <cmath>
#include <limits>

namespace trqf {

namespace {

void check_square(const ElementMatrix& m) {
    if (m.empty()) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    for (const auto& row : m)
        if (row.size() != m.size()) throw Error(ErrorCode::InvalidArgument, "matrix is not square");
}

ElementMatrix submatrix(const ElementMatrix& m, const std::vector<std::size_t>& idx) {
    ElementMatrix out(idx.size(), ElementVector(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) out[a][b] = m[idx[a]][idx[b]];
    return out;
}

double log_size(const FieldContext& K, const Element& a) {
    std::vector<double> mid;
    if (auto ap = K.approx_embed(a)) {
        mid = ap->mid;
    } else {
        for (const auto& iv : K.embed(a, Rational(1, Integer(1) << 60))) mid.push_back(iv.mid().get_d());
    }
    double s = 0;
    for (double v : mid) s += std::abs(std::log(std::abs(v)));
    return s;
}

// Lattice spanned by generators with a (possibly singular) Gram matrix,
// written in coordinates x = D w over an independent subset of generators.
struct Module {
    std::vector<std::size_t> pivots;
    ElementMatrix H;         // Gram of the pivot generators
    ElementMatrix scaled_H;  // H / D^2, Gram in x coordinates
    Integer D = 1;
    ZLattice Z;
    std::size_t r = 0;
    int d = 0;
};

std::vector<Integer> flatten(const ElementVector& x, int d) {
    std::vector<Integer> out;
    out.reserve(x.size() * d);
    for (const auto& e : x) {
        if (!e.is_integral()) throw Error(ErrorCode::InvalidArgument, "flatten expects integral coordinates");
        out.insert(out.end(), e.coords().begin(), e.coords().end());
    }
    return out;
}

ZLattice span_over_ok(const FieldContext& K, const std::vector<ElementVector>& gens, std::size_t r) {
    const int d = K.degree();
    ZLattice Z(r * d);
    for (const auto& g : gens)
        for (int i = 0; i < d; ++i) {
            ElementVector v(r);
            Element b = K.basis_element(i);
            for (std::size_t k = 0; k < r; ++k) v[k] = b * g[k];
            Z.add(flatten(v, d));
        }
    return Z;
}

Module build_module(const GramMatrix& G) {
    FieldContext K = G.field();
    const std::size_t n = G.size();
    Module M;
    M.d = K.degree();
    for (std::size_t k = 0; k < n; ++k) {
        auto trial = M.pivots;
        trial.push_back(k);
        if (!det(submatrix(G.entries(), trial)).is_zero()) M.pivots = trial;
    }
    M.r = M.pivots.size();
    if (M.r == 0) throw Error(ErrorCode::InvalidArgument, "Gram matrix is zero");
    M.H = submatrix(G.entries(), M.pivots);
    auto Hinv = inverse(M.H);
    std::vector<ElementVector> extra;
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < n; ++k) {
        if (std::find(M.pivots.begin(), M.pivots.end(), k) != M.pivots.end()) continue;
        ElementVector c(M.r, K.zero());
        for (std::size_t a = 0; a < M.r; ++a)
            for (std::size_t b = 0; b < M.r; ++b) c[a] = c[a] + Hinv[a][b] * G(M.pivots[b], k);
        extra.push_back(c);
        others.push_back(k);
    }
    for (std::size_t a = 0; a < extra.size(); ++a)
        for (std::size_t b = a; b < extra.size(); ++b) {
            Element v = K.zero();
            for (std::size_t i = 0; i < M.r; ++i)
                for (std::size_t j = 0; j < M.r; ++j) v = v + extra[a][i] * M.H[i][j] * extra[b][j];
            if (v != G(others[a], others[b]))
                throw Error(ErrorCode::InvalidArgument, "generator Gram is inconsistent with its rank");
        }
    for (const auto& c : extra)
        for (const auto& e : c) M.D = lcm(M.D, e.denom());
    std::vector<ElementVector> gens;
    Element Dk = K.from_int(M.D);
    for (std::size_t a = 0; a < M.r; ++a) {
        ElementVector e(M.r, K.zero());
        e[a] = Dk;
        gens.push_back(e);
    }
    for (const auto& c : extra) {
        ElementVector g;
        for (const auto& e : c) g.push_back(Dk * e);
        gens.push_back(g);
    }
    M.Z = span_over_ok(K, gens, M.r);
    Element inv = Rational(1, M.D * M.D) * K.one();
    M.scaled_H = M.H;
    for (auto& row : M.scaled_H)
        for (auto& e : row) e = inv * e;
    return M;
}

Element require_sqrt2(const FieldContext& K) {
    auto s = K.sqrt2();
    if (!s) throw Error(ErrorCode::InvalidArgument, K.label() + ": field record carries no sqrt2");
    return *s;
}

Element bilinear(const ElementMatrix& H, const ElementVector& x, const ElementVector& y) {
    Element v = H[0][0].field().zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (!y[j].is_zero()) v = v + x[i] * H[i][j] * y[j];
    }
    return v;
}

// Vectors of the module with the Gram of target, by columns; require_basis
// additionally demands that they generate the whole module.
std::optional<std::vector<ElementVector>> match_gram(const Module& M, const GramMatrix& target, bool require_basis,
                                                     const EnumerationOptions& opt) {
    FieldContext K = target.field();
    const std::size_t k = target.size();
    std::vector<std::vector<ElementVector>> cands(k);
    for (std::size_t j = 0; j < k; ++j) {
        auto reps = enumerate_representations(M.scaled_H, target(j, j), std::numeric_limits<std::size_t>::max(), opt);
        for (auto& x : reps)
            if (M.Z.contains(flatten(x, M.d))) cands[j].push_back(std::move(x));
        if (cands[j].empty()) return std::nullopt;
    }
    std::vector<ElementVector> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
        if (j == k) {
            if (!require_basis) return true;
            return span_over_ok(K, chosen, M.r).index() == M.Z.index();
        }
        for (const auto& x : cands[j]) {
            bool ok = true;
            for (std::size_t i = 0; i < j && ok; ++i) ok = bilinear(M.scaled_H, chosen[i], x) == target(i, j);
            if (!ok) continue;
            chosen.push_back(x);
            if (rec(j + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return chosen;
}

ElementMatrix columns_to_matrix(const std::vector<ElementVector>& cols, const Integer& D) {
    const std::size_t rows = cols.at(0).size();
    ElementMatrix out(rows, ElementVector(cols.size()));
    Rational inv(1, D);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) out[i][j] = inv * cols[j][i];
    return out;
}

}  // namespace

Element det(const ElementMatrix& m0) {
    check_square(m0);
    ElementMatrix m = m0;
    const std::size_t n = m.size();
    Element result = m[0][0].field().one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return m[0][0].field().zero();
        if (p != c) {
            std::swap(m[p], m[c]);
            result = -result;
        }
        result = result * m[c][c];
        Element inv = m[c][c].inverse();
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            Element f = m[r][c] * inv;
            for (std::size_t k = c; k < n; ++k) m[r][k] = m[r][k] - f * m[c][k];
        }
    }
    return result;
}

ElementMatrix inverse(const ElementMatrix& m0) {
    check_square(m0);
    const std::size_t n = m0.size();
    FieldContext K = m0[0][0].field();
    ElementMatrix m = m0, inv(n, ElementVector(n, K.zero()));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = K.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) throw Error(ErrorCode::Singular, "matrix is singular");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Element s = m[c][c].inverse();
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] = s * m[c][k];
            inv[c][k] = s * inv[c][k];
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c].is_zero()) continue;
            Element f = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] = m[r][k] - f * m[c][k];
                inv[r][k] = inv[r][k] - f * inv[c][k];
            }
        }
    }
    return inv;
}

ElementMatrix multiply(const ElementMatrix& a, const ElementMatrix& b) {
    if (a.empty() || b.empty() || a[0].size() != b.size()) throw Error(ErrorCode::InvalidArgument, "shape mismatch");
    FieldContext K = a[0][0].field();
    ElementMatrix out(a.size(), ElementVector(b[0].size(), K.zero()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
        }
    return out;
}

ElementMatrix transpose(const ElementMatrix& a) {
    if (a.empty()) return a;
    ElementMatrix out(a[0].size(), ElementVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
    return out;
}

GramMatrix::GramMatrix(ElementMatrix entries) : entries_(std::move(entries)) {
    check_square(entries_);
    FieldContext K = entries_[0][0].field();
    for (std::size_t i = 0; i < entries_.size(); ++i)
        for (std::size_t j = 0; j < entries_.size(); ++j) {
            if (!entries_[i][j].valid() || !entries_[i][j].field().same_field(K))
                throw Error(ErrorCode::InvalidArgument, "Gram entries must lie in one field");
            if (entries_[i][j] != entries_[j][i]) throw Error(ErrorCode::InvalidArgument, "Gram matrix is not symmetric");
        }
}

GramMatrix GramMatrix::diagonal(const std::vector<Element>& d) {
    if (d.empty()) throw Error(ErrorCode::InvalidArgument, "empty diagonal");
    ElementMatrix m(d.size(), ElementVector(d.size(), d[0].field().zero()));
    for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
    return GramMatrix(std::move(m));
}

GramMatrix GramMatrix::parse(const FieldContext& K, const std::vector<std::vector<std::string>>& rows) {
    ElementMatrix m;
    for (const auto& row : rows) {
        ElementVector r;
        for (const auto& s : row) r.push_back(parse_element(K, s));
        m.push_back(std::move(r));
    }
    return GramMatrix(std::move(m));
}

bool GramMatrix::is_classical() const {
    for (const auto& row : entries_)
        for (const auto& e : row)
            if (!e.is_integral()) return false;
    return true;
}

bool GramMatrix::is_totally_psd() const {
    FieldContext K = field();
    const std::size_t n = size();
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) idx.push_back(i);
        if (!K.totally_nonnegative(trqf::det(submatrix(entries_, idx)))) return false;
    }
    return true;
}

bool GramMatrix::is_totally_pd() const {
    FieldContext K = field();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < size(); ++i) {
        idx.push_back(i);
        if (!K.totally_positive(trqf::det(submatrix(entries_, idx)))) return false;
    }
    return true;
}

GramMatrix GramMatrix::transform(const ElementMatrix& M) const {
    return GramMatrix(multiply(transpose(M), multiply(entries_, M)));
}

GramMatrix GramMatrix::scaled(const Element& s) const {
    ElementMatrix m = entries_;
    for (auto& row : m)
        for (auto& e : row) e = s * e;
    return GramMatrix(std::move(m));
}

std::string GramMatrix::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < size(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < size(); ++j) s += (j ? "," : "") + entries_[i][j].to_string();
        s += "]";
    }
    return s + "]";
}

GramMatrix gram_inverse_dual(const GramMatrix& G) { return GramMatrix(inverse(G.entries())); }

Element reduce_by_unit_squares(const Element& a) {
    if (a.is_zero()) return a;
    FieldContext K = a.field();
    std::vector<Element> steps;
    for (const auto& u : K.fundamental_units()) {
        Element s = u * u;
        steps.push_back(s);
        steps.push_back(s.inverse());
    }
    Element cur = a;
    double size = log_size(K, cur);
    for (int iter = 0; iter < 10000; ++iter) {
        bool moved = false;
        for (const auto& s : steps) {
            Element c = cur * s;
            double v = log_size(K, c);
            if (v < size - 1e-9) {
                cur = c;
                size = v;
                moved = true;
            }
        }
        if (!moved) return cur;
    }
    return cur;
}

bool same_unit_square_class(const Element& a, const Element& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    FieldContext K = a.field();
    Element q = a / b;
    if (!q.is_integral() || !K.is_unit(q) || !K.totally_positive(q)) return false;
    return sqrt_element(q).has_value();
}

LatticePredicates lattice_predicates(const GramMatrix& G) {
    LatticePredicates p;
    p.classical = G.is_classical();
    p.det = G.det();
    p.unimodular = p.classical && !p.det.is_zero() && abs(G.field().norm(p.det)) == 1;
    p.det_class = reduce_by_unit_squares(p.det);
    return p;
}

std::vector<Element> offdiag_candidates(const Element& a, const Element& b, const EnumerationOptions& opt) {
    return enumerate_dominated(a * b, DominanceMode::SquareDominated, opt);
}

std::optional<Isometry> isometry_search(const GramMatrix& G1, const GramMatrix& G2, const EnumerationOptions& opt) {
    if (!G1.field().same_field(G2.field())) throw Error(ErrorCode::InvalidArgument, "Gram matrices over different fields");
    if (!G2.is_totally_pd()) throw Error(ErrorCode::InvalidArgument, "target Gram must be totally positive definite");
    Module M = build_module(G1);
    if (M.r != G2.size()) return std::nullopt;
    auto cols = match_gram(M, G2, true, opt);
    if (!cols) return std::nullopt;
    Isometry iso{M.pivots, columns_to_matrix(*cols, M.D)};
    if (GramMatrix(M.H).transform(iso.basis) != G2) throw Error(ErrorCode::ValidationError, "isometry failed to verify");
    return iso;
}

std::string_view to_string(LatticeClass c) {
    switch (c) {
        case LatticeClass::L1: return "L1";
        case LatticeClass::L2: return "L2";
        case LatticeClass::L3: return "L3";
        case LatticeClass::L3p: return "L3p";
        case LatticeClass::Diag_1_lambda_2: return "Diag_1_lambda_2";
        case LatticeClass::Diag_1_lambda_3: return "Diag_1_lambda_3";
        case LatticeClass::Other: return "Other";
    }
    return "Other";
}

const std::vector<LatticeClass>& named_classes() {
    static const std::vector<LatticeClass> all = {LatticeClass::L1,  LatticeClass::L2,
                                                  LatticeClass::L3,  LatticeClass::L3p,
                                                  LatticeClass::Diag_1_lambda_2, LatticeClass::Diag_1_lambda_3};
    return all;
}

GramMatrix class_gram(const FieldContext& K, LatticeClass c) {
    switch (c) {
        case LatticeClass::L1: return GramMatrix::parse(K, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "2+sqrt2"}});
        case LatticeClass::L2:
            return GramMatrix::parse(K, {{"1", "0", "0"}, {"0", "2+sqrt2", "1"}, {"0", "1", "2-sqrt2"}});
        case LatticeClass::L3: return GramMatrix::parse(K, {{"1", "0", "0"}, {"0", "2+sqrt2", "1"}, {"0", "1", "3"}});
        case LatticeClass::L3p: return GramMatrix::parse(K, {{"1", "0", "0"}, {"0", "2-sqrt2", "1"}, {"0", "1", "3"}});
        case LatticeClass::Diag_1_lambda_2:
            return GramMatrix::parse(K, {{"1", "0", "0"}, {"0", "2+sqrt2", "0"}, {"0", "0", "2"}});
        case LatticeClass::Diag_1_lambda_3:
            return GramMatrix::parse(K, {{"1", "0", "0"}, {"0", "2+sqrt2", "0"}, {"0", "0", "3"}});
        case LatticeClass::Other: break;
    }
    throw Error(ErrorCode::InvalidArgument, "class Other has no fixed Gram matrix");
}

std::optional<ElementMatrix> contains_sublattice(const GramMatrix& G, const GramMatrix& target,
                                                 const EnumerationOptions& opt) {
    if (!G.is_totally_pd()) throw Error(ErrorCode::InvalidArgument, "lattice Gram must be totally positive definite");
    if (!target.is_totally_pd()) throw Error(ErrorCode::InvalidArgument, "target Gram must be totally positive definite");
    Module M = build_module(G);
    auto cols = match_gram(M, target, false, opt);
    if (!cols) return std::nullopt;
    ElementMatrix V = columns_to_matrix(*cols, M.D);
    if (G.transform(V) != target) throw Error(ErrorCode::ValidationError, "sublattice witness failed to verify");
    return V;
}

std::vector<TernaryCase> ternary_classification(const FieldContext& K, const EnumerationOptions& opt) {
    Element s2 = require_sqrt2(K);
    Element lambda = K.from_int(2) + s2;
    std::vector<TernaryCase> out;
    for (const auto& w13 : {K.zero(), K.one(), s2}) {
        for (const auto& w23 : {K.zero(), K.one(), K.one() + s2}) {
            TernaryCase c;
            c.w13 = w13;
            c.w23 = w23;
            Element z = K.zero();
            c.gram = GramMatrix(ElementMatrix{{K.one(), z, w13}, {z, lambda, w23}, {w13, w23, K.from_int(3)}});
            c.det = c.gram.det();
            c.psd = c.gram.is_totally_psd();
            if (c.psd) {
                if (c.det.is_zero())
                    throw Error(ErrorCode::UnexpectedSingularCase,
                                "case (" + w13.to_string() + ", " + w23.to_string() + ") is semidefinite but singular");
                for (LatticeClass cls : named_classes()) {
                    if (auto iso = isometry_search(c.gram, class_gram(K, cls), opt)) {
                        c.cls = cls;
                        c.isometry = std::move(iso);
                        break;
                    }
                }
                if (!c.isometry)
                    throw Error(ErrorCode::UnclassifiedCase,
                                "case (" + w13.to_string() + ", " + w23.to_string() + ") matches no named class");
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

OverlatticeTest free_overlattice_test(const FieldContext& K, const EnumerationOptions& opt) {
    Element p7 = K.from_int(5) + K.from_int(3) * require_sqrt2(K);
    OverlatticeTest t;
    t.witness = squarefree_witness(p7, opt);
    t.proper_overlattice = t.witness.has_value();
    return t;
}

}  // namespace trqf
