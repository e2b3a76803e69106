// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "../property/suites.hpp"
#include "trqf/cyclotomic.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace trqf;

namespace {

const std::string data_dir = TRQF_DATA_DIR;

FieldContext field_file(const std::string& name) { return load_field_file(data_dir + "/fields/" + name + ".json"); }

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) detail = what;
            ok = false;
        }
    }
};

std::set<std::string> strings(const std::vector<Element>& v) {
    std::set<std::string> out;
    for (const auto& e : v) out.insert(e.to_string());
    return out;
}

std::set<std::string> strings(const FieldContext& K, std::initializer_list<const char*> xs) {
    std::set<std::string> out;
    for (const char* s : xs) out.insert(parse_element(K, s).to_string());
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
}

Outcome small_square_lists() {
    Outcome o;
    auto K = FieldContext::q_sqrt2();
    struct Row {
        const char* bound;
        std::initializer_list<const char*> expected;
    };
    const Row rows[] = {
        {"2+sqrt2", {"0"}},
        {"3", {"0", "1", "-1", "sqrt2", "-sqrt2"}},
        {"6", {"0", "1", "-1", "2", "-2", "sqrt2", "-sqrt2", "1+sqrt2", "-1-sqrt2", "1-sqrt2", "-1+sqrt2"}},
        {"3*(2+sqrt2)", {"0", "1", "-1", "1+sqrt2", "-1-sqrt2"}},
        {"3*(2-sqrt2)", {"0", "1", "-1", "1-sqrt2", "-1+sqrt2"}},
    };
    std::string sizes;
    for (const auto& r : rows) {
        auto got = enumerate_dominated(parse_element(K, r.bound), DominanceMode::SquareDominated);
        sizes += (sizes.empty() ? "" : ",") + std::to_string(got.size());
        o.require(got.size() == r.expected.size() && strings(got) == strings(K, r.expected),
                  std::string("list for B = ") + r.bound);
    }
    if (o.ok) o.detail = "sizes " + sizes;
    return o;
}

Outcome scan_reproduction() {
    Outcome o;
    FieldTable t = ingest_fields(data_dir + "/quartic_sqrt2_20000.jsonl");
    auto label = [](long d) { return "4.4." + std::to_string(d) + ".1"; };
    auto labels = [&](std::initializer_list<long> ds) {
        std::vector<std::string> v;
        for (long d : ds) v.push_back(label(d));
        return v;
    };
    ScanOptions so;
    so.disc_cap = 20000;
    auto on = scan_small_condition(t, so);
    so.unit_filter = false;
    auto off = scan_small_condition(t, so);
    o.require(on.exceptional("3lambda") == labels({2048, 2624}), "filtered 3lambda: " + join(on.exceptional("3lambda")));
    o.require(on.exceptional("6") == labels({1600, 2048, 2624, 10816}), "filtered 6: " + join(on.exceptional("6")));
    o.require(off.exceptional("3lambda") == labels({2048, 2624, 7168, 18432}),
              "unfiltered 3lambda: " + join(off.exceptional("3lambda")));
    o.require(off.exceptional("6") == labels({1600, 2048, 2304, 2624, 7168, 10816, 14336}),
              "unfiltered 6: " + join(off.exceptional("6")));
    for (const auto& v : on.verdicts) o.require(v.status != "error", v.label + ": " + v.error);
    if (o.ok) o.detail = std::to_string(t.records().size()) + " fields";
    return o;
}

Outcome case_analyses() {
    Outcome o;
    auto K = FieldContext::q_sqrt2();
    auto l1 = quartic_case_analysis(CaseMode::L1Extension);
    o.require(l1.det_formula_matches, "L1 determinant formula");
    o.require(l1.x_squared.size() == 10 &&
                  strings(l1.x_squared) == strings(K, {"12-6*sqrt2", "10-5*sqrt2", "4-2*sqrt2", "8-4*sqrt2",
                                                       "10-7*sqrt2", "2+sqrt2", "10-6*sqrt2", "8-5*sqrt2",
                                                       "6-2*sqrt2", "4-sqrt2"}),
              "L1 x^2 list");
    o.require(strings(l1.residuals) == strings(K, {"3*(2+sqrt2)", "5*(2+sqrt2)", "2+sqrt2", "3+sqrt2", "4+sqrt2",
                                                   "3-sqrt2", "4-sqrt2"}),
              "L1 residuals");
    int excluded = 0;
    GramMatrix L1 = class_gram(K, LatticeClass::L1);
    for (const auto& c : l1.cases) {
        if (c.status != "excluded_L1") continue;
        ++excluded;
        o.require(c.x.has_value(), "excluded case without x");
        if (c.x) o.require(isometry_search(case_gram(CaseMode::L1Extension, c.alpha, c.beta, *c.x), L1).has_value(),
                           "excluded case is not isometric to L1");
    }
    o.require(excluded == 2, "excluded L1 cases: " + std::to_string(excluded));

    auto l3 = quartic_case_analysis(CaseMode::L3Extension);
    o.require(l3.det_formula_matches, "L3 determinant formula");
    o.require(l3.x_squared.size() == 7 &&
                  strings(l3.x_squared) ==
                      strings(K, {"18-9*sqrt2", "6-3*sqrt2", "12-6*sqrt2", "15-9*sqrt2", "9-6*sqrt2", "9-3*sqrt2", "3"}),
              "L3 x^2 list");
    o.require(strings(l3.residuals) == strings(K, {"2+sqrt2", "3*(2+sqrt2)", "3*(3+sqrt2)", "3", "3*(3-sqrt2)"}),
              "L3 residuals");
    if (o.ok) o.detail = "10 + 7 values, 2 L1 reconstructions";
    return o;
}

Outcome identities() {
    Outcome o;
    IdentityReport r;
    try {
        r = verify_identities();
    } catch (const Error& e) {
        o.require(false, e.what());
        return o;
    }
    for (const auto& i : r.identities) o.require(i.ok, i.name);
    const double expected = 64 / std::pow(5.0, 2.5);
    o.require(std::fabs(r.refined_max - expected) <= 1e-9, "maximum " + std::to_string(r.refined_max));
    const double s = 1 / std::sqrt(5.0);
    const double want[] = {-1, -s, s, 1};
    o.require(r.maximizer.size() == 4, "maximizer size");
    for (std::size_t i = 0; i < r.maximizer.size() && i < 4; ++i)
        o.require(std::fabs(r.maximizer[i] - want[i]) <= 1e-6, "maximizer coordinate " + std::to_string(r.maximizer[i]));
    o.require(std::fabs(r.bound_value - 1513496.96) <= 0.01, "bound " + std::to_string(r.bound_value));
    if (o.ok) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "max %.12f, bound %.4f", r.refined_max, r.bound_value);
        o.detail = buf;
    }
    return o;
}

Outcome cyclotomic_formulas() {
    Outcome o;
    int indecomposable = 0;
    for (long k = 3; k <= 60; ++k) {
        try {
            auto r = alpha_beta_verify(k);
            if (r.degree > 2 && mobius_phi(k).phi / 2 <= 6) {
                o.require(r.alpha_indecomposable.value_or(false) && r.beta_indecomposable.value_or(false),
                          "indecomposability at k = " + std::to_string(k));
                ++indecomposable;
            }
        } catch (const Error& e) {
            o.require(false, e.what());
        }
    }
    if (o.ok) o.detail = "k = 3..60, " + std::to_string(indecomposable) + " indecomposability checks";
    return o;
}

Outcome example_lattice() {
    Outcome o;
    auto L = field_file("q_sqrt_3_minus_sqrt2");
    GramMatrix G = GramMatrix::parse(L, {{"1", "0", "0"}, {"0", "3", "(1+sqrt2)*x"}, {"0", "(1+sqrt2)*x", "2+sqrt2"}});
    GramMatrix L3 = class_gram(L, LatticeClass::L3);
    auto w = contains_sublattice(G, L3);
    o.require(w.has_value(), "no L3 sublattice");
    if (w) {
        GramMatrix T = G.transform(*w);
        o.require(T == L3, "sublattice Gram differs from L3");
        o.require(T(1, 1) == parse_element(L, "2+sqrt2") && T(2, 2) == L.from_int(3) && T(1, 2) == L.one(),
                  "Gram values");
    }
    // Binary part: every totally positive unit up to the house bound, after
    // normalising the sign, is tested exhaustively.
    ElementMatrix B{{G(1, 1), G(1, 2)}, {G(2, 1), G(2, 2)}};
    const double house_bound = std::max(3.0, std::max(props::house_d(G(1, 1)), props::house_d(G(2, 2)))) * 4;
    auto fu = L.fundamental_units();
    std::set<std::vector<Integer>> seen;
    int tested = 0;
    std::function<void(std::size_t, Element)> walk = [&](std::size_t i, Element u) {
        if (i == fu.size()) {
            for (const Element& s : {u, -u}) {
                if (!L.totally_positive(s) || props::house_d(s) > house_bound) continue;
                if (!seen.insert(s.coords()).second) continue;
                ++tested;
                o.require(enumerate_representations(B, s, 1).empty(), "binary part represents " + s.to_string());
            }
            return;
        }
        for (int e = -3; e <= 3; ++e) walk(i + 1, u * fu[i].pow(e));
    };
    walk(0, L.one());
    o.require(tested > 0, "no unit candidates");
    if (o.ok) o.detail = "L3 found; " + std::to_string(tested) + " totally positive units not represented";
    return o;
}

Outcome overlattices() {
    Outcome o;
    o.require(!free_overlattice_test(FieldContext::q_sqrt2()).proper_overlattice, "Q(sqrt2)");
    o.require(!free_overlattice_test(field_file("k1600")).proper_overlattice, "Q(sqrt2, sqrt5)");
    auto L = field_file("q_sqrt_3_minus_sqrt2");
    auto t = free_overlattice_test(L);
    o.require(t.proper_overlattice && t.witness, "Q(sqrt(3-sqrt2)) has no witness");
    if (t.witness) {
        o.require(t.witness->gamma == L.one(), "witness cofactor is not 1");
        o.require(t.witness->t * t.witness->t == parse_element(L, "5+3*sqrt2"), "t^2 != 5+3sqrt2");
    }
    if (o.ok) o.detail = "t = " + t.witness->t.to_string();
    return o;
}

Outcome obstruction_certificates() {
    Outcome o;
    auto lambda = [](const FieldContext& K) { return K.from_int(2) + *K.sqrt2(); };
    auto K2048 = field_file("k2048");
    auto p2 = totally_positive_of_norm(K2048, 2);
    auto p17 = totally_positive_of_norm(K2048, 17);
    o.require(p2.size() == 1 && !p17.empty(), "K2048 primes");
    for (const auto& p : p17)
        o.require(!p2.empty() && orthogonality_forcing({K2048.one(), p2[0], p}).valid(), "K2048 triple");
    auto K2624 = field_file("k2624");
    auto p7 = totally_positive_of_norm(K2624, 7);
    o.require(!p7.empty(), "K2624 p7");
    for (const auto& p : p7) o.require(orthogonality_forcing({K2624.one(), lambda(K2624), p}).valid(), "K2624 triple");
    auto K51200 = field_file("k51200");
    bool any = false;
    for (const auto& a : totally_positive_of_norm(K51200, 14))
        any = any || orthogonality_forcing({K51200.one(), lambda(K51200), a}).valid();
    o.require(any, "K51200 triple");
    auto c = obstruction_search(K51200);
    o.require(c.has_value(), "no certificate for K51200");
    if (c) o.require(c->orthogonality.valid() && !c->nonrepresentation.represented && revalidate(*c),
                     "K51200 certificate does not re-validate");
    if (o.ok) o.detail = "K51200 gamma = " + c->gamma.to_string();
    return o;
}

Outcome property_suites() {
    Outcome o;
    std::string counts;
    for (const auto& r : {props::enumeration_completeness(data_dir, 50), props::dual_of_dual(data_dir, 20),
                          props::norm_multiplicativity(data_dir, 200), props::unsquare_round_trip(data_dir, 20),
                          props::certificate_revalidation(data_dir)}) {
        o.require(r.ok(), r.name + ": " + r.first_failure);
        counts += (counts.empty() ? "" : ", ") + std::to_string(r.total - r.failed) + "/" + std::to_string(r.total);
    }
    if (o.ok) o.detail = counts;
    return o;
}

Outcome symbolic_two() {
    Outcome o;
    auto r = quartic_case_analysis(CaseMode::NonsquarefreeTwo);
    o.require(r.det_formula_matches, "determinant formula");
    o.require(r.branches.size() == 2, "branch count");
    if (r.branches.size() == 2) {
        o.require(r.branches[0].reduced == "gamma^2*t = beta^2", "branch 0: " + r.branches[0].reduced);
        o.require(r.branches[1].reduced == "gamma = beta^2*t", "branch 1: " + r.branches[1].reduced);
    }
    if (o.ok) o.detail = r.branches[0].reduced + "; " + r.branches[1].reduced;
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit;  // seconds
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "small-square lists", 5, small_square_lists},
        {2, "scan reproduction", 600, scan_reproduction},
        {3, "case analyses", 60, case_analyses},
        {4, "identities", 600, identities},
        {5, "cyclotomic formulas", 600, cyclotomic_formulas},
        {6, "example lattice", 600, example_lattice},
        {7, "overlattice criterion", 600, overlattices},
        {8, "obstruction certificates", 600, obstruction_certificates},
        {9, "property suites", 300, property_suites},
        {10, "nonsquarefree two", 600, symbolic_two},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit) o.require(false, "runtime over " + std::to_string(c.limit) + " s");
        if (!o.ok) ++failed;
        std::printf("criterion %2d %-26s %s  %.2fs  %s\n", c.id, c.name, o.ok ? "PASS" : "FAIL", secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
