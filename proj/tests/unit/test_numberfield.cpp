#include "doctest.h"

#include "trqf/numberfield.hpp"

using namespace trqf;

namespace {

FieldRecord power_basis_record(const std::string& label, std::vector<Integer> poly) {
    FieldRecord r;
    r.label = label;
    r.degree = static_cast<int>(poly.size()) - 1;
    r.poly = std::move(poly);
    r.basis.assign(r.degree, std::vector<Rational>(r.degree, Rational(0)));
    for (int i = 0; i < r.degree; ++i) r.basis[i][i] = 1;
    return r;
}

}  // namespace

TEST_CASE("load_field isolates both roots of x^2-2") {
    auto K = FieldContext::load(power_basis_record("q2", {-2, 0, 1}));
    CHECK(K.degree() == 2);
    CHECK(K.disc() == 8);
    auto x = K.from_power_basis({0, 1});
    auto e = K.embed(x, Rational(1, 1000));
    REQUIRE(e.size() == 2);
    CHECK(e[0].lo >= -2);
    CHECK(e[0].hi <= -1);
    CHECK(e[1].lo >= 1);
    CHECK(e[1].hi <= 2);
}

TEST_CASE("load_field accepts x^4-4x^2+2 with four real roots") {
    auto K = FieldContext::load(power_basis_record("k2048", {2, 0, -4, 0, 1}));
    CHECK(K.root_intervals().size() == 4);
    CHECK(K.disc() == 2048);
}

TEST_CASE("load_field rejects non-totally-real and non-ring inputs") {
    try {
        FieldContext::load(power_basis_record("gauss", {1, 0, 1}));
        FAIL("expected NotTotallyReal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotTotallyReal);
    }
    auto r = power_basis_record("half", {-2, 0, 1});
    r.basis[1][1] = Rational(1, 2);
    try {
        FieldContext::load(r);
        FAIL("expected NotARing");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotARing);
    }
    auto s = power_basis_record("sing", {-2, 0, 1});
    s.basis[1] = s.basis[0];
    try {
        FieldContext::load(s);
        FAIL("expected BadBasis");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadBasis);
    }
    auto t = power_basis_record("disc", {-2, 0, 1});
    t.disc = 12;
    CHECK_THROWS_AS(FieldContext::load(t), Error);
}

TEST_CASE("arith in Q(sqrt2)") {
    auto K = FieldContext::q_sqrt2();
    auto s = *K.sqrt2();
    auto two = K.from_int(2);
    CHECK((two + s) * (two - s) == two);
    auto p7 = K.from_int(5) + K.from_int(3) * s;
    auto eps = K.one() + s;
    CHECK(p7 / (eps * eps) == K.from_int(3) - s);
    auto inv = K.one() / p7;
    CHECK(inv.denom() == 7);
    CHECK(!inv.is_integral());
    CHECK(inv * p7 == K.one());
    CHECK_THROWS_AS(p7 / K.zero(), Error);
}

TEST_CASE("norm and trace") {
    auto K = FieldContext::q_sqrt2();
    auto lambda = parse_element(K, "2+sqrt2");
    auto nt = K.norm_trace(lambda);
    CHECK(nt.norm == 2);
    CHECK(nt.trace == 4);
    auto half = parse_element(K, "1/2+sqrt2");
    CHECK(K.norm(half) == Rational(-7, 4));
    CHECK(K.trace(half) == 1);
}

TEST_CASE("embeddings and house") {
    auto K = FieldContext::q_sqrt2();
    auto s = *K.sqrt2();
    auto e = K.embed(s, Rational(1, 100));
    CHECK(e[0].width() <= Rational(1, 100));
    CHECK(e[0].contains(Rational(-141421, 100000)) == false);
    CHECK(e[0].lo < Rational(-14142, 10000));
    CHECK(e[1].hi > Rational(14142, 10000));
    auto h = K.house(parse_element(K, "2+sqrt2"), Rational(1, 10000000));
    CHECK(h.lo >= Rational(34142130, 10000000));
    CHECK(h.hi <= Rational(34142140, 10000000));
    CHECK(h.lo <= Rational(341421357, 100000000));
    CHECK(h.hi >= Rational(341421356, 100000000));
}

TEST_CASE("compare_dominance") {
    auto K = FieldContext::q_sqrt2();
    CHECK(compare_dominance(parse_element(K, "2+sqrt2"), K.zero()) == Dominance::Greater);
    CHECK(compare_dominance(parse_element(K, "1+sqrt2"), K.zero()) == Dominance::Incomparable);
    CHECK(compare_dominance(K.from_int(6), parse_element(K, "(1+sqrt2)^2")) == Dominance::Greater);
    CHECK(compare_dominance(parse_element(K, "(1+sqrt2)^2"), K.from_int(6)) == Dominance::Less);
    CHECK(compare_dominance(K.from_int(3), K.from_int(3)) == Dominance::Equal);
}

TEST_CASE("exact dominance agrees near zero") {
    // 577/408 exceeds sqrt2 by about 2e-6.
    auto K = FieldContext::q_sqrt2();
    CHECK(K.compare(parse_element(K, "577/408 - sqrt2"), K.zero()) == Dominance::Greater);
    CHECK(K.compare(parse_element(K, "sqrt2 - 577/408"), K.zero()) == Dominance::Less);
    auto tiny = parse_element(K, "(sqrt2-1)^41");
    CHECK(K.compare(tiny, K.zero()) == Dominance::Incomparable);
    CHECK(K.compare(tiny * tiny, K.zero()) == Dominance::Greater);
    CHECK(K.compare(K.one(), K.one() + tiny * tiny) == Dominance::Less);
}

TEST_CASE("signature, units and totally positive associates") {
    auto K = FieldContext::q_sqrt2();
    auto s = *K.sqrt2();
    CHECK(K.signature(s).signs == std::vector<int>{-1, 1});
    CHECK(K.is_unit(parse_element(K, "1+sqrt2")));
    CHECK(!K.is_unit(s));
    auto a = K.totally_positive_associate(s);
    CHECK(a.unit == parse_element(K, "1+sqrt2"));
    CHECK(a.element == parse_element(K, "2+sqrt2"));
    auto one = K.totally_positive_associate(K.one());
    CHECK(one.unit == K.one());
    CHECK_THROWS_AS(K.totally_positive_associate(s, {-K.one()}), Error);
}

TEST_CASE("element parser") {
    auto K = FieldContext::q_sqrt2();
    CHECK(parse_element(K, "[3,-1]") == parse_element(K, "3-sqrt2"));
    CHECK(parse_element(K, "x^2") == K.from_int(2));
    CHECK(parse_element(K, "(1+sqrt2)^-1") == parse_element(K, "sqrt2-1"));
    CHECK_THROWS_AS(parse_element(K, "2+"), Error);
    CHECK_THROWS_AS(parse_element(FieldContext::rationals(), "sqrt2"), Error);
}
