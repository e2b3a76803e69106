#include "suites.hpp"

#include <cmath>
#include <set>

namespace trqf::props {

void SuiteResult::check(bool cond, const std::string& what) {
    ++total;
    if (cond) return;
    if (failed++ == 0) first_failure = what;
}

FieldContext quadratic(long m) {
    FieldRecord rec;
    rec.label = "2.2." + std::to_string(m % 4 == 1 ? m : 4 * m) + ".1";
    rec.degree = 2;
    rec.poly = {Integer(-m), Integer(0), Integer(1)};
    if (m % 4 == 1)
        rec.basis = {{Rational(1), Rational(0)}, {Rational(1, 2), Rational(1, 2)}};
    else
        rec.basis = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    return FieldContext::load(rec);
}

Element random_element(const FieldContext& K, std::mt19937& rng, int range, bool integral) {
    std::uniform_int_distribution<int> c(-range, range);
    std::vector<Integer> v(K.degree());
    for (auto& x : v) x = c(rng);
    Integer den = 1;
    if (!integral) den = std::uniform_int_distribution<int>(1, 6)(rng);
    return K.make(v, den);
}

Element random_totally_positive(const FieldContext& K, std::mt19937& rng, int range) {
    for (;;) {
        Element a = random_element(K, rng, range);
        if (K.totally_positive(a)) return a;
    }
}

double house_d(const Element& a) { return a.field().house(a, Rational(1, 1 << 20)).hi.get_d(); }

namespace {

bool squarefree(long m) {
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

long random_squarefree(std::mt19937& rng) {
    std::uniform_int_distribution<long> d(2, 40);
    for (;;) {
        long m = d(rng);
        if (squarefree(m)) return m;
    }
}

// Naive oracle: every coordinate pair in a box strictly larger than the
// region, each tested exactly.
std::set<std::vector<Integer>> naive_dominated(const Element& B, DominanceMode mode) {
    FieldContext K = B.field();
    const auto& emb = K.basis_embedding();
    double H = house_d(B);
    double r = mode == DominanceMode::SquareDominated ? std::sqrt(H) : H;
    // |u + v b(i)| <= r in both embeddings bounds v by 2r / |b(1) - b(2)|
    double gap = std::fabs(emb[0][1] - emb[1][1]);
    long vmax = static_cast<long>(std::ceil(2 * r / gap)) + 2;
    long umax = static_cast<long>(std::ceil(r + vmax * std::max(std::fabs(emb[0][1]), std::fabs(emb[1][1])))) + 2;
    std::set<std::vector<Integer>> out;
    for (long u = -umax; u <= umax; ++u)
        for (long v = -vmax; v <= vmax; ++v) {
            double s0 = u + v * emb[0][1], s1 = u + v * emb[1][1];
            if (std::fabs(s0) > r + 1 || std::fabs(s1) > r + 1) continue;
            Element w = K.make({Integer(u), Integer(v)});
            bool in = mode == DominanceMode::SquareDominated
                          ? K.totally_nonnegative(B - w * w)
                          : K.totally_nonnegative(w) && K.totally_nonnegative(B - w);
            if (in) out.insert(w.coords());
        }
    return out;
}

}  // namespace

SuiteResult enumeration_completeness(const std::string&, int queries) {
    SuiteResult res{"enumeration completeness"};
    std::mt19937 rng(20240601);
    for (int q = 0; q < queries; ++q) {
        long m = random_squarefree(rng);
        FieldContext K = quadratic(m);
        Element B = random_totally_positive(K, rng, 9);
        DominanceMode mode = q % 2 ? DominanceMode::Interval : DominanceMode::SquareDominated;
        std::string where = "m = " + std::to_string(m) + ", B = " + B.to_string() + ", " + std::string(to_string(mode));
        auto got = enumerate_dominated(B, mode);
        std::set<std::vector<Integer>> gs;
        for (const auto& w : got) gs.insert(w.coords());
        bool ok = gs.size() == got.size() && gs == naive_dominated(B, mode) && std::is_sorted(got.begin(), got.end());
        if (mode == DominanceMode::SquareDominated)
            for (const auto& w : got) ok = ok && gs.count((-w).coords());
        res.check(ok, where);
    }
    return res;
}

SuiteResult dual_of_dual(const std::string& data_dir, int grams) {
    SuiteResult res{"dual of the dual"};
    std::mt19937 rng(7);
    std::vector<FieldContext> fields{FieldContext::q_sqrt2(), quadratic(5), load_field_file(data_dir + "/fields/k1600.json")};
    for (int t = 0; t < grams; ++t) {
        const FieldContext& K = fields[t % fields.size()];
        const std::size_t n = 2 + t % 3;
        ElementMatrix e(n, std::vector<Element>(n, K.zero()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) e[i][j] = e[j][i] = random_element(K, rng, 2);
        // strictly diagonally dominant in every embedding
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) row += house_d(e[i][j]);
            e[i][i] = random_totally_positive(K, rng, 2) + K.from_int(static_cast<long>(std::ceil(row)) + 1);
        }
        GramMatrix G(e);
        std::string where = K.label() + ": " + G.to_string();
        if (!G.is_classical() || !G.is_totally_pd()) {
            res.check(false, "generator produced a bad Gram " + where);
            continue;
        }
        GramMatrix D = gram_inverse_dual(G);
        auto prod = multiply(G.entries(), D.entries());
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) ok = ok && prod[i][j] == (i == j ? K.one() : K.zero());
        ok = ok && gram_inverse_dual(D) == G && D.det() * G.det() == K.one();
        auto pred = lattice_predicates(G);
        ok = ok && pred.classical && pred.unimodular == K.is_unit(G.det());
        res.check(ok, where);
    }
    return res;
}

SuiteResult norm_multiplicativity(const std::string& data_dir, int pairs) {
    SuiteResult res{"norm multiplicativity"};
    std::mt19937 rng(99);
    std::vector<FieldContext> fields{FieldContext::q_sqrt2(), quadratic(5), quadratic(13),
                                     load_field_file(data_dir + "/fields/k1600.json"),
                                     load_field_file(data_dir + "/fields/k51200.json")};
    for (int t = 0; t < pairs; ++t) {
        const FieldContext& K = fields[t % fields.size()];
        Element a = random_element(K, rng, 6, t % 3 != 0), b = random_element(K, rng, 6, t % 4 != 0);
        std::string where = K.label() + ": a = " + a.to_string() + ", b = " + b.to_string();
        bool ok = K.norm(a * b) == K.norm(a) * K.norm(b) && K.trace(a + b) == K.trace(a) + K.trace(b);
        if (!b.is_zero()) ok = ok && (a * b) / b == a;
        if (a.is_integral()) ok = ok && K.norm(a).get_den() == 1 && K.trace(a).get_den() == 1;
        // interval midpoints reproduce the exact norm and trace
        auto e = K.embed(a, Rational(1, 1 << 30));
        double prod = 1, sum = 0;
        for (const auto& x : e) {
            double mid = Rational((x.lo + x.hi) / 2).get_d();
            prod *= mid;
            sum += mid;
        }
        double n = K.norm(a).get_d();
        ok = ok && std::fabs(prod - n) < 1e-6 * (1 + std::fabs(n)) * std::pow(1 + house_d(a), K.degree());
        ok = ok && std::fabs(sum - K.trace(a).get_d()) < 1e-6 * K.degree();
        res.check(ok, where);
    }
    return res;
}

SuiteResult unsquare_round_trip(const std::string& data_dir, int inputs) {
    SuiteResult res{"unsquare round trip"};
    std::mt19937 rng(5);
    std::vector<FieldContext> fields{FieldContext::q_sqrt2(), load_field_file(data_dir + "/fields/k1600.json")};
    while (res.total < inputs) {
        const FieldContext& K = fields[res.total % fields.size()];
        Element beta = random_totally_positive(K, rng, 4);
        if (K.is_unit(beta) || sqrt_element(beta)) continue;
        int k = std::uniform_int_distribution<int>(0, 2)(rng);
        Element alpha = beta;
        for (int i = 0; i < k; ++i) alpha = alpha * alpha;
        Element u = K.one();
        for (const auto& g : K.fundamental_units()) u = u * g.pow(std::uniform_int_distribution<int>(-2, 2)(rng));
        alpha = u * u * alpha;
        auto r = unsquare(alpha, K.units());
        Element p = r.beta;
        for (int i = 0; i < r.k; ++i) p = p * p;
        bool ok = r.k == k && r.mu * p == alpha && K.is_unit(r.mu) && K.totally_positive(r.beta) &&
                  !sqrt_element(r.beta).has_value();
        res.check(ok, K.label() + ": alpha = " + alpha.to_string());
    }
    return res;
}

SuiteResult certificate_revalidation(const std::string& data_dir, long disc_cap) {
    SuiteResult res{"certificate revalidation"};
    FieldTable t = ingest_fields(data_dir + "/quartic_sqrt2_260000.jsonl");
    ScanOptions so;
    so.disc_cap = disc_cap;
    so.deterministic = true;
    std::vector<std::pair<FieldContext, ObstructionCertificate>> certs;
    for (const auto& v : scan_obstructions(t, so).verdicts)
        if (v.certificate) certs.emplace_back(FieldContext::load(*t.find_label(v.label)), *v.certificate);
    FieldContext K = load_field_file(data_dir + "/fields/k51200.json");
    if (auto c = obstruction_search(K)) certs.emplace_back(K, *c);
    for (const auto& [F, c] : certs) {
        auto back = certificate_from_json(F, certificate_to_json(c));
        bool ok = revalidate(back) && back.gamma == c.gamma && back.triple == c.triple;
        // a tampered target must be rejected
        back.gamma = back.gamma + F.one();
        ok = ok && !revalidate(back);
        res.check(ok, c.field);
    }
    return res;
}

}  // namespace trqf::props
