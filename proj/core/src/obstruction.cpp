#include "trqf/obstruction.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace trqf {

using nlohmann::json;
using namespace detail;

namespace {

Element require_sqrt2(const FieldContext& K) {
    auto s = K.sqrt2();
    if (!s) throw Error(ErrorCode::InvalidArgument, K.label() + ": field record carries no sqrt2");
    return *s;
}

bool first_nonzero_positive(const Element& a) {
    for (const auto& c : a.coords())
        if (c != 0) return c > 0;
    return true;
}

Integer content(const Element& a) {
    Integer g = 0;
    for (const auto& c : a.coords()) g = gcd(g, c);
    return g;
}

bool coords_less(const Element& a, const Element& b) { return a.coords() < b.coords(); }

}  // namespace

// ---------------------------------------------------------------- orthogonality

bool OrthogonalityCertificate::valid() const {
    if (pairs.empty()) return false;
    return std::all_of(pairs.begin(), pairs.end(), [](const PairForcing& p) { return p.forces_zero(); });
}

OrthogonalityCertificate orthogonality_forcing(const std::vector<Element>& elements, const EnumerationOptions& opt) {
    if (elements.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two elements");
    FieldContext K = elements[0].field();
    for (const auto& a : elements)
        if (!a.is_integral() || !K.totally_positive(a))
            throw Error(ErrorCode::InvalidArgument, "orthogonality forcing needs totally positive integers");
    OrthogonalityCertificate c;
    c.elements = elements;
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            PairForcing p;
            p.i = i;
            p.j = j;
            p.product = elements[i] * elements[j];
            auto rep = enumerate_dominated_report({p.product, DominanceMode::SquareDominated}, opt);
            p.box = rep.box;
            p.admissible = std::move(rep.elements);
            c.pairs.push_back(std::move(p));
        }
    return c;
}

// ---------------------------------------------------------------- dual lattice

DualTranscript dual_nonrepresentation(const std::vector<Element>& diag, const Element& gamma,
                                      const EnumerationOptions& opt) {
    if (diag.empty()) throw Error(ErrorCode::InvalidArgument, "empty diagonal");
    FieldContext K = gamma.field();
    for (const auto& a : diag)
        if (!K.totally_positive(a)) throw Error(ErrorCode::InvalidArgument, "diagonal entries must be totally positive");
    if (!K.totally_positive(gamma)) throw Error(ErrorCode::InvalidArgument, "gamma must be totally positive");
    DualTranscript t;
    t.diag = diag;
    t.gamma = gamma;
    Element prod = K.one();
    for (const auto& a : diag) prod = prod * a;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        Element c = K.one();
        for (std::size_t k = 0; k < diag.size(); ++k)
            if (k != i) c = c * diag[k];
        t.cleared.push_back(c);
    }
    t.cleared_target = gamma * prod;
    auto reps = enumerate_representations(GramMatrix::diagonal(t.cleared).entries(), t.cleared_target, 1, opt);
    t.represented = !reps.empty();
    if (t.represented) t.vector = reps[0];
    return t;
}

// ---------------------------------------------------------------- case analyses

std::string_view to_string(CaseMode m) {
    switch (m) {
        case CaseMode::L1Extension: return "L1_extension";
        case CaseMode::L3Extension: return "L3_extension";
        case CaseMode::NonsquarefreeTwo: return "nonsquarefree_two";
    }
    return "";
}

CaseMode parse_case_mode(const std::string& s) {
    for (CaseMode m : {CaseMode::L1Extension, CaseMode::L3Extension, CaseMode::NonsquarefreeTwo})
        if (s == to_string(m)) return m;
    throw Error(ErrorCode::InvalidArgument, "unknown case mode '" + s + "'");
}

SquareClass square_class_reduce(const Element& value) {
    if (value.is_zero() || !value.is_integral())
        throw Error(ErrorCode::InvalidArgument, "square class needs a nonzero integer");
    FieldContext K = value.field();
    Element s2 = require_sqrt2(K);
    Element v = value, s = K.one();
    Integer c = content(v);
    while (divides(2, c)) {
        v = Rational(1, 2) * v;
        s = s * s2;
        c /= 2;
    }
    for (Integer p = 3; p * p <= c; p += 2) {
        while (divides(p * p, c)) {
            v = Rational(1, p * p) * v;
            s = K.from_int(p) * s;
            c /= p * p;
        }
    }
    Element eps = K.one() + s2;
    Element best = v;
    long best_k = 0;
    Rational best_size = K.trace(v * v);
    Element up = v, down = v;
    Element e2 = eps * eps, e2inv = e2.inverse();
    for (long k = 1; k <= 16; ++k) {
        up = up * e2;
        down = down * e2inv;
        for (auto [cand, kk] : {std::pair<Element, long>{up, k}, std::pair<Element, long>{down, -k}}) {
            Rational sz = K.trace(cand * cand);
            bool tie = sz == best_size;
            if (sz < best_size || (tie && std::lexicographical_compare(best.coords().rbegin(), best.coords().rend(),
                                                                       cand.coords().rbegin(), cand.coords().rend()))) {
                best = cand;
                best_k = kk;
                best_size = sz;
            }
        }
    }
    return {best, s * eps.pow(-best_k)};
}

namespace {

const std::vector<std::string> kCaseNames = {"alpha", "beta", "x"};

long mode_scalar(CaseMode mode) { return mode == CaseMode::L1Extension ? 2 : 3; }

std::vector<std::vector<MPoly>> symbolic_case_gram(CaseMode mode, const FieldContext& K) {
    Element s2 = require_sqrt2(K);
    MPoly z = MPoly::constant(K, kCaseNames, K.zero());
    auto c = [&](const Element& e) { return MPoly::constant(K, kCaseNames, e); };
    MPoly a = z.variable(0), b = z.variable(1), x = z.variable(2);
    Element lam = K.from_int(2) + s2;
    Element last = K.from_int(3) * (K.from_int(2) - s2);
    Element third = K.from_int(mode_scalar(mode));
    return {{c(K.one()), z, z, a}, {z, c(lam), z, b}, {z, z, c(third), x}, {a, b, x, c(last)}};
}

MPoly hard_coded_det(CaseMode mode, const FieldContext& K) {
    Element s2 = require_sqrt2(K);
    Element lam = K.from_int(2) + s2;
    MPoly z = MPoly::constant(K, kCaseNames, K.zero());
    auto c = [&](const Element& e) { return MPoly::constant(K, kCaseNames, e); };
    MPoly a = z.variable(0), b = z.variable(1), x = z.variable(2);
    // -lambda x^2 + c (6 - lambda alpha^2 - beta^2)
    return c(-lam) * x * x + c(K.from_int(mode_scalar(mode))) * (c(K.from_int(6)) - c(lam) * a * a - b * b);
}

std::vector<Element> sign_representatives(std::vector<Element> v) {
    std::vector<Element> out;
    for (auto& e : v)
        if (first_nonzero_positive(e)) out.push_back(e);
    FieldContext K = out.at(0).field();
    std::stable_sort(out.begin(), out.end(), [&](const Element& a, const Element& b) {
        Rational ta = K.trace(a * a), tb = K.trace(b * b);
        if (ta != tb) return ta < tb;
        return coords_less(a, b);
    });
    return out;
}

void symbolic_two(CaseAnalysisReport& rep) {
    FieldContext Q = FieldContext::rationals();
    const std::vector<std::string> names = {"gamma", "beta", "t"};
    MPoly z = MPoly::constant(Q, names, Q.zero());
    MPoly one = MPoly::constant(Q, names, Q.one());
    MPoly g = z.variable("gamma"), b = z.variable("beta"), t = z.variable("t");
    // Relation gamma t^2 = 2.
    MPoly::Exponents rel = {1, 0, 2};
    Element two = Q.from_int(2);
    struct Shape {
        const char* label;
        MPoly b24;
        MPoly expected;
        const char* conclusion;
    };
    std::vector<Shape> shapes = {
        {"beta24 = 0", z, g * g * t - b * b, "t = (beta/gamma)^2 is a square"},
        {"beta24 = 1", one, g - b * b * t, "gamma*t = (beta*t)^2 is a square"},
    };
    bool all = true;
    for (const auto& sh : shapes) {
        std::vector<std::vector<MPoly>> G = {
            {one, z, z, z}, {z, t, z, sh.b24}, {z, z, g, b}, {z, sh.b24, b, g * t}};
        MPoly d = det(G);
        MPoly reduced = d.strip_monomial().reduce(rel, two);
        SymbolicBranch br;
        br.label = sh.label;
        br.gram = "[[1,0,0,0],[0,t,0," + sh.b24.to_string() + "],[0,0,gamma,beta],[0," + sh.b24.to_string() +
                  ",beta,gamma*t]]";
        br.det = d.to_string();
        br.reduced = reduced.identity_string();
        br.conclusion = sh.conclusion;
        all = all && (reduced == sh.expected || reduced == -sh.expected);
        rep.branches.push_back(std::move(br));
    }
    rep.det_symbolic = rep.branches[0].det + " ; " + rep.branches[1].det;
    rep.det_formula = "gamma^2*t = beta^2 ; gamma = beta^2*t";
    rep.det_formula_matches = all;
}

}  // namespace

MPoly case_gram_det(CaseMode mode) {
    if (mode == CaseMode::NonsquarefreeTwo) throw Error(ErrorCode::InvalidArgument, "mode has symbolic branches only");
    return det(symbolic_case_gram(mode, FieldContext::q_sqrt2()));
}

GramMatrix case_gram(CaseMode mode, const Element& alpha, const Element& beta, const Element& x) {
    if (mode == CaseMode::NonsquarefreeTwo) throw Error(ErrorCode::InvalidArgument, "mode has symbolic branches only");
    FieldContext K = alpha.field();
    Element s2 = require_sqrt2(K);
    Element z = K.zero();
    Element lam = K.from_int(2) + s2;
    Element last = K.from_int(3) * (K.from_int(2) - s2);
    return GramMatrix(ElementMatrix{{K.one(), z, z, alpha},
                                    {z, lam, z, beta},
                                    {z, z, K.from_int(mode_scalar(mode)), x},
                                    {alpha, beta, x, last}});
}

CaseAnalysisReport quartic_case_analysis(CaseMode mode, const EnumerationOptions& opt) {
    CaseAnalysisReport rep;
    rep.mode = mode;
    if (mode == CaseMode::NonsquarefreeTwo) {
        symbolic_two(rep);
        return rep;
    }
    FieldContext K = FieldContext::q_sqrt2();
    Element s2 = require_sqrt2(K);
    Element lam = K.from_int(2) + s2;
    MPoly d = det(symbolic_case_gram(mode, K));
    MPoly h = hard_coded_det(mode, K);
    rep.det_symbolic = d.to_string();
    rep.det_formula = h.to_string();
    rep.det_formula_matches = d == h;

    // Cauchy-Schwarz: alpha^2 <= 3(2-sqrt2), beta^2 <= 3(2-sqrt2) lambda = 6.
    Element bound_a = K.from_int(3) * (K.from_int(2) - s2);
    auto alphas = sign_representatives(enumerate_dominated(bound_a, DominanceMode::SquareDominated, opt));
    auto betas = sign_representatives(enumerate_dominated(bound_a * lam, DominanceMode::SquareDominated, opt));
    Element c = K.from_int(mode_scalar(mode));
    GramMatrix L1 = class_gram(K, LatticeClass::L1);
    for (const auto& a : alphas)
        for (const auto& b : betas) {
            CaseEntry e;
            e.alpha = a;
            e.beta = b;
            e.remainder = K.from_int(6) - lam * a * a - b * b;
            e.totally_positive = K.totally_positive(e.remainder);
            if (!e.totally_positive) {
                e.status = "not_totally_positive";
                rep.cases.push_back(std::move(e));
                continue;
            }
            // det = 0  <=>  x^2 = c (6 - lambda alpha^2 - beta^2) / lambda
            Element x2 = c * e.remainder / lam;
            e.x_squared = x2;
            e.integral = x2.is_integral();
            if (!e.integral) {
                e.status = "not_integral";
                rep.cases.push_back(std::move(e));
                continue;
            }
            if (d.evaluate_even({a, b, K.zero()}, 2, x2) != K.zero())
                throw Error(ErrorCode::ValidationError, "solved x^2 does not annihilate the determinant");
            if (auto x = sqrt_element(x2, opt)) {
                e.x = *x;
                if (mode == CaseMode::L1Extension) {
                    GramMatrix G = case_gram(mode, a, b, *x);
                    e.reconstructs_l1 = G.is_totally_psd() && isometry_search(G, L1, opt).has_value();
                }
            }
            if (e.reconstructs_l1) {
                e.status = "excluded_L1";
                rep.cases.push_back(std::move(e));
                continue;
            }
            e.square_class = square_class_reduce(x2);
            e.status = "emitted";
            rep.x_squared.push_back(x2);
            if (std::find(rep.residuals.begin(), rep.residuals.end(), e.square_class->residual) == rep.residuals.end())
                rep.residuals.push_back(e.square_class->residual);
            rep.cases.push_back(std::move(e));
        }
    return rep;
}

// ---------------------------------------------------------------- obstruction search

bool units_realize_all_signatures(const FieldContext& K) {
    const int d = K.degree();
    std::vector<std::vector<int>> rows;
    auto gens = K.units();
    gens.push_back(-K.one());
    for (const auto& u : gens) {
        auto sg = K.signature(u).signs;
        std::vector<int> bits(d);
        for (int i = 0; i < d; ++i) bits[i] = sg[i] < 0;
        rows.push_back(bits);
    }
    int rank = 0;
    for (int c = 0; c < d; ++c) {
        int p = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][c]) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[p], rows[rank]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && rows[r][c])
                for (int k = 0; k < d; ++k) rows[r][k] ^= rows[rank][k];
        ++rank;
    }
    return rank == d;
}

std::vector<Element> candidate_pool(const FieldContext& K, const Integer& max_norm, long house_bound,
                                    const EnumerationOptions& opt) {
    std::vector<Element> raw;
    for (auto& a : enumerate_dominated(K.from_int(house_bound), DominanceMode::Interval, opt))
        if (!a.is_zero() && K.totally_positive(a)) raw.push_back(a);
    // Small norms whose unit-square classes have no representative of small
    // house (large regulator) come from norm-targeted enumeration.
    if (K.degree() > 1 && !K.fundamental_units().empty()) {
        for (Integer n = 2; n <= max_norm; ++n)
            for (auto& a : totally_positive_of_norm(K, n, opt)) raw.push_back(a);
    }
    struct Item {
        Element a;
        Rational norm, trace;
    };
    std::vector<Item> items;
    for (auto& a0 : raw) {
        Element a = K.degree() > 1 ? reduce_by_unit_squares(a0) : a0;
        auto nt = K.norm_trace(a);
        if (nt.norm > Rational(max_norm)) continue;
        items.push_back({a, nt.norm, nt.trace});
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        if (x.norm != y.norm) return x.norm < y.norm;
        if (x.trace != y.trace) return x.trace < y.trace;
        return coords_less(x.a, y.a);
    });
    std::vector<Item> kept;
    for (auto& it : items) {
        bool dup = false;
        for (const auto& k : kept)
            if (k.norm == it.norm && same_unit_square_class(it.a, k.a)) {
                dup = true;
                break;
            }
        if (!dup) kept.push_back(it);
    }
    std::vector<Element> out;
    for (auto& k : kept) out.push_back(k.a);
    return out;
}

std::optional<ObstructionCertificate> obstruction_search(const FieldContext& K, std::size_t pool_size,
                                                         const EnumerationOptions& opt) {
    if (!units_realize_all_signatures(K))
        throw Error(ErrorCode::InvalidArgument, K.label() + ": totally positive units are not all squares");
    auto pool = candidate_pool(K, 64, 6, opt);
    if (pool_size > 0 && pool.size() > pool_size) pool.resize(pool_size);
    if (pool.size() < 4) throw Error(ErrorCode::PoolExhausted, K.label() + ": candidate pool has fewer than four elements");
    const std::size_t n = pool.size();
    std::map<std::pair<std::size_t, std::size_t>, int> forced;  // 1 forced zero, 0 not
    auto forces = [&](std::size_t i, std::size_t j) {
        auto key = std::make_pair(i, j);
        auto it = forced.find(key);
        if (it != forced.end()) return it->second == 1;
        auto v = enumerate_dominated(pool[i] * pool[j], DominanceMode::SquareDominated, opt);
        bool z = v.size() == 1 && v[0].is_zero();
        forced[key] = z ? 1 : 0;
        return z;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!forces(i, j)) continue;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (!forces(i, k) || !forces(j, k)) continue;
                std::vector<Element> triple = {pool[i], pool[j], pool[k]};
                for (std::size_t g = 0; g < n; ++g) {
                    if (g == i || g == j || g == k) continue;
                    auto t = dual_nonrepresentation(triple, pool[g], opt);
                    if (t.represented) continue;
                    ObstructionCertificate c;
                    c.field = K.label();
                    c.triple = triple;
                    c.gamma = pool[g];
                    c.orthogonality = orthogonality_forcing(triple, opt);
                    c.nonrepresentation = std::move(t);
                    return c;
                }
            }
        }
    return std::nullopt;
}

std::string certificate_to_json(const ObstructionCertificate& c) {
    json pairs = json::array();
    for (const auto& p : c.orthogonality.pairs)
        pairs.push_back(json{{"i", p.i},
                             {"j", p.j},
                             {"product", element_json(p.product)},
                             {"box", box_json(p.box)},
                             {"admissible", elements_json(p.admissible)}});
    const auto& t = c.nonrepresentation;
    json j;
    j["field"] = c.field;
    j["triple"] = elements_json(c.triple);
    j["gamma"] = element_json(c.gamma);
    j["orthogonality"] = json{{"elements", elements_json(c.orthogonality.elements)},
                              {"pairs", pairs},
                              {"valid", c.orthogonality.valid()}};
    j["nonrepresentation"] = json{{"diag", elements_json(t.diag)},
                                  {"gamma", element_json(t.gamma)},
                                  {"cleared", elements_json(t.cleared)},
                                  {"cleared_target", element_json(t.cleared_target)},
                                  {"represented", t.represented}};
    if (t.vector) j["nonrepresentation"]["vector"] = elements_json(*t.vector);
    return j.dump();
}

ObstructionCertificate certificate_from_json(const FieldContext& K, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid certificate JSON: ") + e.what());
    }
    try {
        ObstructionCertificate c;
        c.field = j.at("field").get<std::string>();
        if (c.field != K.label()) throw Error(ErrorCode::ValidationError, "certificate belongs to field " + c.field);
        c.triple = elements_from(K, j.at("triple"));
        c.gamma = element_from(K, j.at("gamma"));
        const auto& o = j.at("orthogonality");
        c.orthogonality.elements = elements_from(K, o.at("elements"));
        for (const auto& p : o.at("pairs")) {
            PairForcing f;
            f.i = p.at("i").get<std::size_t>();
            f.j = p.at("j").get<std::size_t>();
            f.product = element_from(K, p.at("product"));
            f.box = box_from(p.at("box"));
            f.admissible = elements_from(K, p.at("admissible"));
            c.orthogonality.pairs.push_back(std::move(f));
        }
        const auto& n = j.at("nonrepresentation");
        c.nonrepresentation.diag = elements_from(K, n.at("diag"));
        c.nonrepresentation.gamma = element_from(K, n.at("gamma"));
        c.nonrepresentation.cleared = elements_from(K, n.at("cleared"));
        c.nonrepresentation.cleared_target = element_from(K, n.at("cleared_target"));
        c.nonrepresentation.represented = n.at("represented").get<bool>();
        if (n.contains("vector")) c.nonrepresentation.vector = elements_from(K, n["vector"]);
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed certificate: ") + e.what());
    }
}

bool revalidate(const ObstructionCertificate& c, const EnumerationOptions& opt) {
    if (c.triple.size() != 3 || c.orthogonality.elements != c.triple) return false;
    if (!c.orthogonality.valid() || c.nonrepresentation.represented) return false;
    auto o = orthogonality_forcing(c.triple, opt);
    if (o.pairs.size() != c.orthogonality.pairs.size()) return false;
    for (std::size_t k = 0; k < o.pairs.size(); ++k) {
        const auto& a = o.pairs[k];
        const auto& b = c.orthogonality.pairs[k];
        if (a.i != b.i || a.j != b.j || a.product != b.product || a.admissible != b.admissible) return false;
        if (a.box.lo != b.box.lo || a.box.hi != b.box.hi) return false;
    }
    if (!o.valid()) return false;
    auto t = dual_nonrepresentation(c.triple, c.gamma, opt);
    if (t.represented || t.cleared != c.nonrepresentation.cleared ||
        t.cleared_target != c.nonrepresentation.cleared_target || c.nonrepresentation.gamma != c.gamma)
        return false;
    return true;
}

// ---------------------------------------------------------------- indecomposables

std::string_view to_string(IndecomposableKind k) {
    switch (k) {
        case IndecomposableKind::Square: return "square";
        case IndecomposableKind::LambdaSquare: return "lambda_square";
        case IndecomposableKind::Other: return "other";
    }
    return "";
}

std::vector<IndecomposableEntry> indecomposables_classify(const FieldContext& K, const Rational& trace_bound,
                                                          const EnumerationOptions& opt) {
    Element lam = K.from_int(2) + require_sqrt2(K);
    if (2 * trace_bound < 5 * K.degree()) throw Error(ErrorCode::InvalidArgument, "trace bound must be at least 5d/2");
    std::vector<IndecomposableEntry> out;
    for (const auto& a : enumerate_dominated(K.from_rational(trace_bound), DominanceMode::Interval, opt)) {
        if (a.is_zero() || !K.totally_positive(a)) continue;
        auto nt = K.norm_trace(a);
        if (nt.trace > trace_bound) continue;
        if (!is_indecomposable(a, false, nullptr, opt).indecomposable) continue;
        IndecomposableEntry e{a, nt.norm, nt.trace, IndecomposableKind::Other};
        if (sqrt_element(a, opt)) {
            e.kind = IndecomposableKind::Square;
        } else {
            Element q = a / lam;
            if (q.is_integral() && sqrt_element(q, opt)) e.kind = IndecomposableKind::LambdaSquare;
        }
        out.push_back(std::move(e));
    }
    std::stable_sort(out.begin(), out.end(), [](const IndecomposableEntry& x, const IndecomposableEntry& y) {
        if (x.trace != y.trace) return x.trace < y.trace;
        if (x.norm != y.norm) return x.norm < y.norm;
        return coords_less(x.alpha, y.alpha);
    });
    return out;
}

// ---------------------------------------------------------------- 2 = gamma t^2

std::vector<Element> totally_positive_of_norm(const FieldContext& K, const Integer& n, const EnumerationOptions& opt) {
    std::vector<Element> out;
    for (const auto& r : elements_of_norm(K, n, opt)) {
        try {
            out.push_back(K.totally_positive_associate(r).element);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoSuchUnit) throw;
        }
    }
    return out;
}

std::optional<TwoDecomposition> two_decomposition_search(const FieldContext& K, const EnumerationOptions& opt) {
    if (K.sqrt2()) throw Error(ErrorCode::InvalidArgument, K.label() + ": field contains sqrt2");
    const int d = K.degree();
    Element two = K.from_int(2);
    // norm(gamma) = 2^(d - 2j) >= 1 bounds j.
    for (int j = 1; 2 * j <= d; ++j) {
        for (const auto& t0 : elements_of_norm(K, Integer(1) << j, opt)) {
            if (!(two / (t0 * t0)).is_integral()) continue;
            Associate a;
            try {
                a = K.totally_positive_associate(t0);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NoSuchUnit) throw;
                continue;
            }
            Element t = a.element;
            return TwoDecomposition{two / (t * t), t, j};
        }
    }
    return std::nullopt;
}

}  // namespace trqf
