// Randomised invariants checked against independent oracles. Seeds are fixed.

#include "suites.hpp"

#include <doctest.h>

using namespace trqf;
using namespace trqf::props;

namespace {

const std::string data_dir = TRQF_DATA_DIR;

void require_suite(const SuiteResult& r) {
    INFO(r.name, ": ", r.failed, " of ", r.total, " failed, first: ", r.first_failure);
    CHECK(r.ok());
}

}  // namespace

TEST_CASE("enumeration completeness against a naive box on 50 random quadratic queries") {
    auto r = enumeration_completeness(data_dir, 50);
    CHECK(r.total == 50);
    require_suite(r);
}

TEST_CASE("dual of the dual on 20 random classical Grams") {
    auto r = dual_of_dual(data_dir, 20);
    CHECK(r.total == 20);
    require_suite(r);
}

TEST_CASE("norm multiplicativity and trace additivity on 200 random pairs") {
    auto r = norm_multiplicativity(data_dir, 200);
    CHECK(r.total == 200);
    require_suite(r);
}

TEST_CASE("unsquare round trip on 20 inputs") {
    auto r = unsquare_round_trip(data_dir, 20);
    CHECK(r.total == 20);
    require_suite(r);
}

TEST_CASE("every certificate re-validates from its serialized form") { require_suite(certificate_revalidation(data_dir)); }

TEST_CASE("decompositions, square roots and square factors are exact") {
    std::mt19937 rng(11);
    FieldContext K = FieldContext::q_sqrt2();
    for (int t = 0; t < 40; ++t) {
        Element a = random_totally_positive(K, rng, 8);
        auto d = is_indecomposable(a);
        if (!d.indecomposable && d.beta) {
            CHECK(*d.beta + *d.gamma == a);
            CHECK(K.totally_positive(*d.beta));
            CHECK(K.totally_positive(*d.gamma));
        }
        if (auto s = sqrt_element(a * a)) CHECK(*s * *s == a * a);
        if (auto w = squarefree_witness(a)) {
            CHECK(w->gamma * w->t * w->t == a);
            CHECK(abs(K.norm(w->t)) > 1);
        }
    }
}

TEST_CASE("indecomposables are stable under squares of units") {
    for (const char* f : {"qsqrt2", "qsqrt5", "k1600"}) {
        FieldContext K = load_field_file(data_dir + "/fields/" + f + ".json");
        if (!K.sqrt2()) continue;
        Rational T = Rational(5 * K.degree(), 2) + 1;
        auto entries = indecomposables_classify(K, T);
        REQUIRE(!entries.empty());
        for (const auto& e : entries)
            for (const auto& u : K.fundamental_units()) {
                Element b = u * u * e.alpha;
                CHECK(is_indecomposable(b).indecomposable);
                CHECK(same_unit_square_class(b, e.alpha));
            }
    }
}

TEST_CASE("square-class reduction records an exact square factor") {
    for (CaseMode m : {CaseMode::L1Extension, CaseMode::L3Extension}) {
        auto r = quartic_case_analysis(m);
        for (const auto& c : r.cases)
            if (c.x_squared && c.square_class)
                CHECK(c.square_class->residual * c.square_class->s * c.square_class->s == *c.x_squared);
    }
    std::mt19937 rng(3);
    FieldContext K = FieldContext::q_sqrt2();
    for (int t = 0; t < 30; ++t) {
        Element v = random_totally_positive(K, rng, 20);
        auto sc = square_class_reduce(v);
        CHECK(sc.residual * sc.s * sc.s == v);
    }
}

TEST_CASE("two decompositions satisfy gamma t^2 = 2") {
    for (const char* f : {"qsqrt3", "qsqrt5", "q_sqrt_3_minus_sqrt2"}) {
        FieldContext K = load_field_file(data_dir + "/fields/" + f + ".json");
        if (K.sqrt2()) continue;
        if (auto d = two_decomposition_search(K)) {
            CHECK(d->gamma * d->t * d->t == K.from_int(2));
            CHECK(K.totally_positive(d->gamma));
            CHECK(K.totally_positive(d->t));
            CHECK(abs(K.norm(d->t)) > 1);
        }
    }
}

TEST_CASE("isometry_search finds the identity class of every named lattice") {
    FieldContext K = FieldContext::q_sqrt2();
    for (auto c : named_classes()) {
        GramMatrix G = class_gram(K, c);
        auto iso = isometry_search(G, G);
        REQUIRE(iso.has_value());
        ElementMatrix M(G.size(), std::vector<Element>(G.size(), K.zero()));
        for (std::size_t j = 0; j < G.size(); ++j)
            for (std::size_t i = 0; i < G.size(); ++i) M[iso->pivots[i]][j] = iso->basis[i][j];
        CHECK(G.transform(M) == G);
        CHECK(K.is_unit(det(M)));
    }
}
