#include "trqf/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace trqf {

std::string_view to_string(DominanceMode m) {
    return m == DominanceMode::SquareDominated ? "square_dominated" : "interval";
}

double EnumerationBox::volume() const {
    double v = 1;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (hi[j] < lo[j]) return 0;
        v *= Integer(hi[j] - lo[j] + 1).get_d();
    }
    return v;
}

namespace {

constexpr double kUnit = 1.0 / 9007199254740992.0;  // 2^-53

double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

double lower_double(const Rational& q) { return down(down(q.get_d())); }
double upper_double(const Rational& q) { return up(up(q.get_d())); }

Rational rational_from_double(double x) {
    Rational q(x);
    return q;
}

void check_ceiling(double volume, const EnumerationOptions& opt, const char* what) {
    if (volume > opt.ceiling) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: box holds %.3g candidates, ceiling is %.3g", what, volume, opt.ceiling);
        throw Error(ErrorCode::BoxTooLarge, buf);
    }
}

// Walks every point of the box in lexicographic order. Points whose certified
// double embedding misses [lo_d, hi_d] in some coordinate are dropped, as are
// points rejected by keep(mid, rad); the rest are handed to visit(element).
// visit returns false to stop the walk.
template <class Keep, class Visit>
std::uint64_t walk_box(const FieldContext& K, const EnumerationBox& box, const std::vector<double>& lo_d,
                       const std::vector<double>& hi_d, Keep&& keep, Visit&& visit) {
    const int d = K.degree();
    for (int j = 0; j < d; ++j)
        if (box.hi[j] < box.lo[j]) return 0;
    for (int j = 0; j < d; ++j)
        if (!box.lo[j].fits_slong_p() || !box.hi[j].fits_slong_p())
            throw Error(ErrorCode::BoxTooLarge, "box coordinates exceed machine range");
    const auto& m = K.basis_embedding();
    const auto& e = K.basis_embedding_error();
    const double gamma = (d + 2) * kUnit / (1 - (d + 2) * kUnit);
    // Per-coordinate weight for the error bound: e_ij + gamma |m_ij|.
    std::vector<std::vector<double>> w(d, std::vector<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) w[i][j] = e[i][j] + gamma * std::abs(m[i][j]);

    std::vector<long> lo(d), hi(d), x(d);
    for (int j = 0; j < d; ++j) {
        lo[j] = box.lo[j].get_si();
        hi[j] = box.hi[j].get_si();
        x[j] = lo[j];
    }
    // partial[l][i]: contribution of coordinates < l.
    std::vector<std::vector<double>> ps(d + 1, std::vector<double>(d, 0.0)), pr(d + 1, std::vector<double>(d, 0.0));
    auto fill = [&](int from) {
        for (int l = from; l < d; ++l)
            for (int i = 0; i < d; ++i) {
                ps[l + 1][i] = ps[l][i] + static_cast<double>(x[l]) * m[i][l];
                pr[l + 1][i] = pr[l][i] + std::abs(static_cast<double>(x[l])) * w[i][l];
            }
    };
    fill(0);
    std::vector<double> mid(d), rad(d);
    std::uint64_t survivors = 0;
    while (true) {
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            mid[i] = ps[d][i];
            rad[i] = pr[d][i] * (1 + 4 * kUnit) + std::numeric_limits<double>::denorm_min();
            if (mid[i] + rad[i] < lo_d[i] || mid[i] - rad[i] > hi_d[i]) ok = false;
        }
        if (ok && keep(mid, rad)) {
            ++survivors;
            std::vector<Integer> c(d);
            for (int j = 0; j < d; ++j) c[j] = x[j];
            if (!visit(K.make(std::move(c)))) return survivors;
        }
        int l = d - 1;
        while (l >= 0 && x[l] == hi[l]) {
            x[l] = lo[l];
            --l;
        }
        if (l < 0) break;
        ++x[l];
        fill(l);
    }
    return survivors;
}

std::vector<double> approx_mid(const FieldContext& K, const Element& a) {
    if (auto ap = K.approx_embed(a)) return ap->mid;
    auto v = K.embed(a, Rational(1, Integer(1) << 60));
    std::vector<double> out;
    for (const auto& iv : v) out.push_back(iv.mid().get_d());
    return out;
}

bool lex_less(const ElementVector& a, const ElementVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool first_nonzero_positive(const Element& a) {
    for (const auto& c : a.coords())
        if (c != 0) return c > 0;
    return true;
}

}  // namespace

EnumerationBox region_box(const FieldContext& K, const std::function<std::vector<Interval>(unsigned)>& region) {
    const int d = K.degree();
    EnumerationBox best;
    double prev = -1;
    for (unsigned bits = 16; bits <= 256; bits *= 2) {
        auto reg = region(bits);
        auto dual = K.dual_basis_embedding(bits);
        EnumerationBox box;
        box.bits = bits;
        box.lo.resize(d);
        box.hi.resize(d);
        for (int j = 0; j < d; ++j) {
            Interval x(Rational(0));
            for (int i = 0; i < d; ++i) x = x + dual[i][j] * reg[i];
            box.lo[j] = ceil(x.lo);
            box.hi[j] = floor(x.hi);
            if (!best.lo.empty()) {
                box.lo[j] = std::max(box.lo[j], best.lo[j]);
                box.hi[j] = std::min(box.hi[j], best.hi[j]);
            }
        }
        double vol = box.volume();
        best = box;
        if (vol == 0) return best;
        if (prev >= 0 && std::abs(vol - prev) <= 0.01 * prev) return best;
        prev = vol;
    }
    return best;
}

DominatedResult enumerate_dominated_report(const DominanceQuery& q, const EnumerationOptions& opt) {
    const Element& B = q.bound;
    if (!B.valid()) throw Error(ErrorCode::InvalidArgument, "bound is not initialised");
    FieldContext K = B.field();
    if (!K.totally_positive(B)) throw Error(ErrorCode::InvalidArgument, "bound must be totally positive");
    const int d = K.degree();
    const bool square = q.mode == DominanceMode::SquareDominated;
    auto region = [&](unsigned bits) {
        auto e = K.embed(B, Rational(1, Integer(1) << bits));
        std::vector<Interval> r(d);
        for (int i = 0; i < d; ++i) {
            if (square) {
                Rational s = sqrt_upper(e[i].hi, bits);
                r[i] = Interval(-s, s);
            } else {
                r[i] = Interval(0, e[i].hi);
            }
        }
        return r;
    };
    DominatedResult res;
    res.box = region_box(K, region);
    check_ceiling(res.box.volume(), opt, "enumerate_dominated");
    auto reg = region(res.box.bits);
    std::vector<double> lo_d(d), hi_d(d);
    for (int i = 0; i < d; ++i) {
        lo_d[i] = lower_double(reg[i].lo);
        hi_d[i] = upper_double(reg[i].hi);
    }
    auto keep = [](const std::vector<double>&, const std::vector<double>&) { return true; };
    res.candidates = walk_box(K, res.box, lo_d, hi_d, keep, [&](const Element& w) {
        bool in = false;
        if (square) {
            auto c = K.compare(B, w * w);
            in = c == Dominance::Greater || c == Dominance::Equal;
        } else {
            in = K.totally_nonnegative(w) && K.totally_nonnegative(B - w);
        }
        if (in) res.elements.push_back(w);
        return true;
    });
    std::sort(res.elements.begin(), res.elements.end());
    return res;
}

std::vector<Element> enumerate_dominated(const DominanceQuery& q, const EnumerationOptions& opt) {
    return enumerate_dominated_report(q, opt).elements;
}

std::vector<Element> enumerate_dominated(const Element& bound, DominanceMode mode, const EnumerationOptions& opt) {
    return enumerate_dominated(DominanceQuery{bound, mode}, opt);
}

// ---------------------------------------------------------------- representations

std::vector<ElementVector> enumerate_representations(const ElementMatrix& G, const Element& gamma, std::size_t cap,
                                                     const EnumerationOptions& opt) {
    const int n = static_cast<int>(G.size());
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty Gram matrix");
    FieldContext K = gamma.field();
    const int d = K.degree();
    std::vector<ElementVector> out;
    if (cap == 0) return out;
    if (gamma.is_zero()) {
        out.push_back(ElementVector(n, K.zero()));
        return out;
    }
    if (!K.totally_positive(gamma)) return out;

    // Per-embedding Cholesky data: Q(y) = sum_k q_kk (y_k + sum_{l>k} q_kl y_l)^2.
    std::vector<std::vector<std::vector<double>>> Q(d, std::vector<std::vector<double>>(n, std::vector<double>(n)));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (static_cast<int>(G[r].size()) != n) throw Error(ErrorCode::InvalidArgument, "Gram matrix is not square");
            auto v = approx_mid(K, G[r][c]);
            for (int i = 0; i < d; ++i) Q[i][r][c] = v[i];
        }
    for (int i = 0; i < d; ++i) {
        auto& q = Q[i];
        for (int a = 0; a < n; ++a) {
            if (!(q[a][a] > 0)) throw Error(ErrorCode::InvalidArgument, "Gram matrix is not totally positive definite");
            for (int b = a + 1; b < n; ++b) {
                q[b][a] = q[a][b];
                q[a][b] = q[a][b] / q[a][a];
            }
            for (int k = a + 1; k < n; ++k)
                for (int l = k; l < n; ++l) q[k][l] -= q[k][a] * q[a][l];
        }
    }
    auto gam = approx_mid(K, gamma);
    auto dual_iv = K.dual_basis_embedding(64);
    std::vector<std::vector<double>> D(d, std::vector<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) D[i][j] = dual_iv[i][j].mid().get_d();
    const auto& M = K.basis_embedding();
    const double rel = 1e-9;

    std::vector<std::vector<double>> sv(n, std::vector<double>(d));
    std::vector<std::vector<long>> xs(n, std::vector<long>(d));
    double nodes = 0;

    std::function<void(int, const std::vector<double>&)> rec = [&](int k, const std::vector<double>& T) {
        if (out.size() >= cap) return;
        if (k < 0) {
            ElementVector v;
            for (int a = 0; a < n; ++a) {
                std::vector<Integer> c(xs[a].begin(), xs[a].end());
                v.push_back(K.make(std::move(c)));
            }
            Element val = K.zero();
            for (int a = 0; a < n; ++a) {
                if (v[a].is_zero()) continue;
                for (int b = 0; b < n; ++b)
                    if (!v[b].is_zero()) val = val + v[a] * G[a][b] * v[b];
            }
            if (val == gamma) out.push_back(std::move(v));
            return;
        }
        std::vector<double> lo(d), hi(d), center(d);
        for (int i = 0; i < d; ++i) {
            double c = 0;
            for (int l = k + 1; l < n; ++l) c += Q[i][k][l] * sv[l][i];
            center[i] = c;
            double r = std::sqrt(std::max(T[i], 0.0) / Q[i][k][k]);
            double slack = rel * (1 + std::abs(c) + r);
            lo[i] = -c - r - slack;
            hi[i] = -c + r + slack;
        }
        std::vector<long> blo(d), bhi(d);
        double vol = 1;
        for (int j = 0; j < d; ++j) {
            double a = 0, b = 0, mag = 0;
            for (int i = 0; i < d; ++i) {
                double p1 = D[i][j] * lo[i], p2 = D[i][j] * hi[i];
                a += std::min(p1, p2);
                b += std::max(p1, p2);
                mag += std::abs(p1) + std::abs(p2);
            }
            double slack = rel * (1 + mag);
            double fa = std::ceil(a - slack), fb = std::floor(b + slack);
            if (fb < fa) return;
            if (std::abs(fa) > 9e15 || std::abs(fb) > 9e15)
                throw Error(ErrorCode::BoxTooLarge, "representation box exceeds machine range");
            blo[j] = static_cast<long>(fa);
            bhi[j] = static_cast<long>(fb);
            vol *= (fb - fa + 1);
        }
        check_ceiling(vol, opt, "enumerate_representations");
        nodes += vol;
        check_ceiling(nodes, opt, "enumerate_representations (total)");
        std::vector<long> x = blo;
        std::vector<double> s(d), T2(d);
        while (true) {
            bool ok = true;
            for (int i = 0; i < d && ok; ++i) {
                double v = 0;
                for (int j = 0; j < d; ++j) v += static_cast<double>(x[j]) * M[i][j];
                s[i] = v;
                if (v < lo[i] || v > hi[i]) ok = false;
                double y = v + center[i];
                T2[i] = T[i] - Q[i][k][k] * y * y;
                if (T2[i] < -rel * (1 + std::abs(gam[i]))) ok = false;
            }
            if (ok) {
                sv[k] = s;
                xs[k] = x;
                rec(k - 1, T2);
                if (out.size() >= cap) return;
            }
            int l = d - 1;
            while (l >= 0 && x[l] == bhi[l]) {
                x[l] = blo[l];
                --l;
            }
            if (l < 0) break;
            ++x[l];
        }
    };
    rec(n - 1, gam);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

// ---------------------------------------------------------------- indecomposables

Indecomposability is_indecomposable(const Element& alpha, bool sigma_mode, const std::vector<Element>* units,
                                    const EnumerationOptions& opt) {
    FieldContext K = alpha.field();
    Indecomposability res;
    res.tested = alpha;
    if (sigma_mode) {
        if (alpha.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero is not sigma-indecomposable");
        res.tested = units ? K.totally_positive_associate(alpha, *units).element : K.totally_positive_associate(alpha).element;
    }
    const Element& a = res.tested;
    if (!a.is_integral() || !K.totally_positive(a))
        throw Error(ErrorCode::InvalidArgument, "indecomposability needs a totally positive integer");
    const int d = K.degree();
    auto nt = K.norm_trace(a);
    if (nt.norm < Rational(Integer(1) << d)) {
        res.indecomposable = true;
        res.reason = "norm";
        return res;
    }
    if (a == K.from_int(2)) {
        res.reason = "two";
        res.beta = K.one();
        res.gamma = K.one();
        return res;
    }
    if (2 * nt.trace < 5 * d) {
        res.indecomposable = true;
        res.reason = "trace";
        return res;
    }
    res.reason = "exhaustive";
    for (const auto& b : enumerate_dominated(a, DominanceMode::Interval, opt)) {
        if (b.is_zero() || b == a) continue;
        res.beta = b;
        res.gamma = a - b;
        return res;
    }
    res.indecomposable = true;
    return res;
}

// ---------------------------------------------------------------- square roots

std::optional<Element> sqrt_element(const Element& alpha, const EnumerationOptions& opt) {
    FieldContext K = alpha.field();
    if (!alpha.is_integral()) throw Error(ErrorCode::InvalidArgument, "sqrt_element needs an integral element");
    if (alpha.is_zero()) return alpha;
    if (!K.totally_positive(alpha)) return std::nullopt;
    const int d = K.degree();
    std::vector<Element> found;
    // sigma_i(beta) = s_i sqrt(sigma_i(alpha)); fix s_0 = +1, the other root is -beta.
    for (unsigned long mask = 0; mask < (1ul << (d - 1)); ++mask) {
        std::vector<int> s(d, 1);
        for (int i = 1; i < d; ++i)
            if (mask >> (i - 1) & 1) s[i] = -1;
        auto region = [&](unsigned bits) {
            auto e = K.embed(alpha, Rational(1, Integer(1) << bits));
            std::vector<Interval> r(d);
            for (int i = 0; i < d; ++i) {
                Interval root = sqrt(e[i], bits);
                r[i] = s[i] > 0 ? root : -root;
            }
            return r;
        };
        auto box = region_box(K, region);
        check_ceiling(box.volume(), opt, "sqrt_element");
        auto reg = region(box.bits);
        std::vector<double> lo_d(d), hi_d(d);
        for (int i = 0; i < d; ++i) {
            lo_d[i] = lower_double(reg[i].lo);
            hi_d[i] = upper_double(reg[i].hi);
        }
        std::optional<Element> hit;
        walk_box(
            K, box, lo_d, hi_d, [](const auto&, const auto&) { return true; },
            [&](const Element& b) {
                if (b * b == alpha) {
                    hit = b;
                    return false;
                }
                return true;
            });
        if (hit) return first_nonzero_positive(*hit) ? *hit : -*hit;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- norms

std::vector<Element> elements_of_norm(const FieldContext& K, const Integer& n, const EnumerationOptions& opt) {
    if (n <= 0) throw Error(ErrorCode::InvalidArgument, "norm target must be positive");
    const int d = K.degree();
    if (d == 1) return {K.from_int(n)};

    // Pick d-1 units with independent logarithm vectors.
    std::vector<std::vector<double>> logs;
    std::vector<std::vector<double>> echelon;
    for (const auto& u : K.fundamental_units()) {
        auto m = approx_mid(K, u);
        std::vector<double> l(d);
        for (int i = 0; i < d; ++i) l[i] = std::log(std::abs(m[i]));
        std::vector<double> r = l;
        for (const auto& e : echelon) {
            std::size_t p = 0;
            while (p < e.size() && std::abs(e[p]) < 1e-9) ++p;
            double f = r[p] / e[p];
            for (int i = 0; i < d; ++i) r[i] -= f * e[i];
        }
        double nrm = 0;
        for (double v : r) nrm = std::max(nrm, std::abs(v));
        if (nrm < 1e-6) continue;
        echelon.push_back(r);
        logs.push_back(l);
        if (static_cast<int>(logs.size()) == d - 1) break;
    }
    if (static_cast<int>(logs.size()) < d - 1)
        throw Error(ErrorCode::MissingData, K.label() + ": fewer than d-1 independent units available");

    const double nroot = std::pow(n.get_d(), 1.0 / d);
    std::vector<Interval> region(d);
    std::vector<double> lo_d(d), hi_d(d);
    for (int i = 0; i < d; ++i) {
        double s = 0;
        for (const auto& l : logs) s += std::abs(l[i]);
        double R = nroot * std::exp(0.5 * s) * (1 + 1e-9) + 1e-9;
        Rational Rq = rational_from_double(R);
        region[i] = Interval(-Rq, Rq);
        lo_d[i] = -R;
        hi_d[i] = R;
    }
    auto box = region_box(K, [&](unsigned) { return region; });
    check_ceiling(box.volume(), opt, "elements_of_norm");
    const double target = n.get_d();
    auto keep = [&](const std::vector<double>& mid, const std::vector<double>& rad) {
        double upper = 1, lower = 1;
        for (int i = 0; i < d; ++i) {
            double a = std::abs(mid[i]);
            upper *= a + rad[i];
            lower *= std::max(a - rad[i], 0.0);
        }
        return upper >= target * (1 - 1e-12) && lower <= target * (1 + 1e-12);
    };
    std::vector<Element> reps;
    walk_box(K, box, lo_d, hi_d, keep, [&](const Element& t) {
        if (abs(K.norm(t)) != Rational(n)) return true;
        for (const auto& r : reps)
            if ((t / r).is_integral()) return true;
        reps.push_back(t);
        return true;
    });
    return reps;
}

std::optional<SquareFactor> squarefree_witness(const Element& alpha, const EnumerationOptions& opt) {
    FieldContext K = alpha.field();
    if (!alpha.is_integral() || alpha.is_zero())
        throw Error(ErrorCode::InvalidArgument, "squarefree_witness needs a nonzero integral element");
    Integer N = Rational(abs(K.norm(alpha))).get_num();
    if (N == 1) return std::nullopt;

    auto normalise = [&](SquareFactor f) {
        if (K.is_unit(f.gamma) && K.totally_positive(f.gamma)) {
            if (auto r = sqrt_element(f.gamma, opt)) {
                f.t = f.t * *r;
                f.gamma = K.one();
            }
        }
        return f;
    };
    if (K.totally_positive(alpha))
        if (auto r = sqrt_element(alpha, opt)) return SquareFactor{*r, K.one()};
    for (const auto& m : divisors(N)) {
        if (m == 1 || !divides(m * m, N)) continue;
        for (const auto& t : elements_of_norm(K, m, opt)) {
            Element g = alpha / (t * t);
            if (g.is_integral()) return normalise(SquareFactor{t, g});
        }
    }
    return std::nullopt;
}

Unsquared unsquare(const Element& alpha, const std::vector<Element>& units, const EnumerationOptions& opt) {
    FieldContext K = alpha.field();
    if (alpha.is_zero() || !alpha.is_integral()) throw Error(ErrorCode::InvalidArgument, "unsquare needs a nonzero integer");
    if (K.is_unit(alpha)) throw Error(ErrorCode::InvalidArgument, "unsquare is undefined on units");
    Unsquared res{K.one(), alpha, 0};
    for (int iter = 0; iter < 64; ++iter) {
        auto assoc = K.totally_positive_associate(res.beta, units);
        // beta = eta^-1 beta', so alpha = mu eta^(-2^k) beta'^(2^k).
        Element eta_pow = assoc.unit;
        for (int i = 0; i < res.k; ++i) eta_pow = eta_pow * eta_pow;
        res.mu = res.mu / eta_pow;
        res.beta = assoc.element;
        auto r = sqrt_element(res.beta, opt);
        if (!r) return res;
        res.beta = *r;
        ++res.k;
    }
    throw Error(ErrorCode::InvalidArgument, "unsquare did not terminate");
}

std::optional<std::vector<Element>> sum_of_squares_test(const Element& gamma, int n, const EnumerationOptions& opt) {
    FieldContext K = gamma.field();
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "number of squares must be nonnegative");
    std::set<std::pair<std::vector<Integer>, int>> failed;
    std::function<std::optional<std::vector<Element>>(const Element&, int)> rec =
        [&](const Element& g, int m) -> std::optional<std::vector<Element>> {
        if (g.is_zero()) return std::vector<Element>(m, K.zero());
        if (m == 0 || !K.totally_nonnegative(g)) return std::nullopt;
        if (failed.count({g.coords(), m})) return std::nullopt;
        if (m == 1) {
            if (auto r = sqrt_element(g, opt)) return std::vector<Element>{*r};
            failed.insert({g.coords(), m});
            return std::nullopt;
        }
        for (const auto& w : enumerate_dominated(g, DominanceMode::SquareDominated, opt)) {
            if (w.is_zero() || !first_nonzero_positive(w)) continue;
            if (auto rest = rec(g - w * w, m - 1)) {
                rest->insert(rest->begin(), w);
                return rest;
            }
        }
        failed.insert({g.coords(), m});
        return std::nullopt;
    };
    if (!gamma.is_integral()) throw Error(ErrorCode::InvalidArgument, "sum_of_squares_test needs an integral element");
    return rec(gamma, n);
}

}  // namespace trqf
