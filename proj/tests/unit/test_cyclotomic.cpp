#include "doctest.h"

#include "trqf/cyclotomic.hpp"
#include "trqf/fieldtable.hpp"

#include <cmath>

using namespace trqf;

namespace {

FieldContext field_file(const char* name) {
    return load_field_file(std::string(TRQF_DATA_DIR) + "/fields/" + name + ".json");
}

}  // namespace

TEST_CASE("mobius and phi") {
    CHECK(mobius_phi(1).mu == 1);
    CHECK(mobius_phi(12).mu == 0);
    CHECK(mobius_phi(12).phi == 4);
    CHECK(mobius_phi(5).mu == -1);
    CHECK(mobius_phi(5).phi == 4);
    CHECK(mobius_phi(30).mu == -1);
    CHECK(mobius_phi(30).phi == 8);
    CHECK(prime_power_base(27) == 3);
    CHECK(prime_power_base(12) == 0);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(12) == Poly::from_integers({1, 0, -1, 0, 1}));
    CHECK(cyclotomic_poly(5) == Poly::from_integers({1, 1, 1, 1, 1}));
    CHECK(cyclotomic_poly(1) == Poly::from_integers({-1, 1}));
    CHECK(minpoly_cos(8) == Poly::from_integers({-2, 0, 1}));
    CHECK(minpoly_cos(5) == Poly::from_integers({-1, 1, 1}));
    CHECK(minpoly_cos(12) == Poly::from_integers({-3, 0, 1}));
    CHECK(minpoly_cos(3) == Poly::from_integers({1, 1}));
    CHECK_THROWS_AS(minpoly_cos(2), Error);
}

TEST_CASE("minpoly_cos vanishes at 2cos(2pi/k)") {
    for (long k = 3; k <= 60; ++k) {
        Poly f = minpoly_cos(k);
        CHECK(f.degree() == mobius_phi(k).phi / 2);
        double c = 2 * std::cos(2 * M_PI / static_cast<double>(k));
        // The largest root is simple; a sign change across a small rational
        // interval around the double approximation brackets it.
        Rational lo(c - 1e-9), hi(c + 1e-9);
        CHECK(sgn(f.eval(lo)) * sgn(f.eval(hi)) < 0);
    }
}

TEST_CASE("cyclo_info") {
    auto f8 = cyclo_info(8);
    CHECK(f8.field.degree() == 2);
    REQUIRE(f8.field.sqrt2());
    CHECK(*f8.field.sqrt2() == f8.omega);
    CHECK(f8.alpha - f8.beta == f8.omega + f8.omega);
    auto f5 = cyclo_info(5);
    CHECK(f5.field.disc() == 5);
    auto f24 = cyclo_info(24);
    REQUIRE(f24.field.sqrt2());
    CHECK(f24.field.sqrt2()->square() == f24.field.from_int(2));
    CHECK_THROWS_AS(cyclo_info(2), Error);
}

TEST_CASE("alpha and beta against closed forms") {
    auto r9 = alpha_beta_verify(9);
    CHECK(r9.norm_beta == 3);
    CHECK(r9.norm_alpha == 1);
    CHECK(r9.alpha_indecomposable.value_or(false));
    CHECK(alpha_beta_verify(14).norm_alpha == 7);
    CHECK(alpha_beta_verify(5).trace_alpha == 3);
    for (long k = 3; k <= 60; ++k) CHECK_NOTHROW(alpha_beta_verify(k));
}

TEST_CASE("subfield test") {
    auto K1600 = field_file("k1600");
    auto w = subfield_test(K1600, 5);
    REQUIRE(w);
    CHECK((w->square() + *w - K1600.one()).is_zero());
    auto K = FieldContext::q_sqrt2();
    auto s = subfield_test(K, 8);
    REQUIRE(s);
    CHECK(*s == *K.sqrt2());
    CHECK_FALSE(subfield_test(K, 5));
    CHECK_FALSE(subfield_test(K, 7));
    for (long k : {5L, 7L, 9L, 12L, 15L, 16L, 20L})
        CHECK(subfield_test(cyclo_info(k).field, k));
}
