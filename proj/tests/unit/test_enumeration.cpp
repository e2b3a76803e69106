#include "doctest.h"

#include "trqf/enumeration.hpp"
#include "trqf/fieldtable.hpp"

#include <set>

using namespace trqf;

namespace {

std::set<std::string> as_strings(const std::vector<Element>& v) {
    std::set<std::string> out;
    for (const auto& e : v) out.insert(e.to_string());
    return out;
}

std::set<std::string> parse_all(const FieldContext& K, std::initializer_list<const char*> xs) {
    std::set<std::string> out;
    for (const char* s : xs) out.insert(parse_element(K, s).to_string());
    return out;
}

FieldContext k7168() { return load_field_file(std::string(TRQF_DATA_DIR) + "/fields/q_sqrt_3_minus_sqrt2.json"); }

}  // namespace

TEST_CASE("square-dominated lists over Q(sqrt2)") {
    auto K = FieldContext::q_sqrt2();
    auto sq = [&](const char* b) { return enumerate_dominated(parse_element(K, b), DominanceMode::SquareDominated); };
    CHECK(as_strings(sq("2+sqrt2")) == parse_all(K, {"0"}));
    CHECK(as_strings(sq("3")) == parse_all(K, {"0", "1", "-1", "sqrt2", "-sqrt2"}));
    CHECK(as_strings(sq("6")) == parse_all(K, {"0", "1", "-1", "2", "-2", "sqrt2", "-sqrt2", "1+sqrt2", "-1-sqrt2",
                                               "1-sqrt2", "-1+sqrt2"}));
    CHECK(as_strings(sq("3*(2+sqrt2)")) == parse_all(K, {"0", "1", "-1", "1+sqrt2", "-1-sqrt2"}));
    CHECK(as_strings(sq("3*(2-sqrt2)")) == parse_all(K, {"0", "1", "-1", "1-sqrt2", "-1+sqrt2"}));
}

TEST_CASE("enumeration output is sorted and symmetric") {
    auto K = FieldContext::q_sqrt2();
    auto v = enumerate_dominated(parse_element(K, "6"), DominanceMode::SquareDominated);
    CHECK(std::is_sorted(v.begin(), v.end()));
    auto s = as_strings(v);
    for (const auto& e : v) CHECK(s.count((-e).to_string()) == 1);
}

TEST_CASE("interval mode and the ceiling") {
    auto K = FieldContext::q_sqrt2();
    auto v = enumerate_dominated(parse_element(K, "2"), DominanceMode::Interval);
    CHECK(as_strings(v) == parse_all(K, {"0", "1", "2"}));
    CHECK_THROWS_AS(enumerate_dominated(parse_element(K, "-1"), DominanceMode::Interval), Error);
    EnumerationOptions tight;
    tight.ceiling = 10;
    CHECK_THROWS_AS(enumerate_dominated(parse_element(K, "1000"), DominanceMode::Interval, tight), Error);
}

TEST_CASE("representations by diagonal forms over Q") {
    auto Q = FieldContext::rationals();
    ElementMatrix I2 = {{Q.one(), Q.zero()}, {Q.zero(), Q.one()}};
    auto r = enumerate_representations(I2, Q.from_int(2), 100);
    CHECK(r.size() == 4);
    for (const auto& v : r) CHECK((v[0] * v[0] + v[1] * v[1]) == Q.from_int(2));
    CHECK(std::is_sorted(r.begin(), r.end()));
    CHECK(enumerate_representations(I2, Q.from_int(2), 3).size() == 3);

    ElementMatrix I3 = {{Q.one(), Q.zero(), Q.zero()}, {Q.zero(), Q.one(), Q.zero()}, {Q.zero(), Q.zero(), Q.one()}};
    CHECK(enumerate_representations(I3, Q.from_int(7), 100).empty());
    CHECK(enumerate_representations(I3, Q.from_int(3), 100).size() == 8);
}

TEST_CASE("representations over Q(sqrt2)") {
    auto K = FieldContext::q_sqrt2();
    auto lam = parse_element(K, "2+sqrt2");
    ElementMatrix G = {{K.one(), K.zero()}, {K.zero(), lam}};
    auto r = enumerate_representations(G, parse_element(K, "3+sqrt2"), 100);
    // 1 + lambda: (+-1, +-1) only, since lambda is indecomposable.
    CHECK(r.size() == 4);
    for (const auto& v : r) CHECK(v[0] * v[0] + lam * v[1] * v[1] == parse_element(K, "3+sqrt2"));
}

TEST_CASE("indecomposability") {
    auto K = FieldContext::q_sqrt2();
    auto lam = is_indecomposable(parse_element(K, "2+sqrt2"));
    CHECK(lam.indecomposable);
    CHECK(lam.reason == "norm");
    auto two = is_indecomposable(K.from_int(2));
    CHECK_FALSE(two.indecomposable);
    REQUIRE(two.beta);
    CHECK(*two.beta + *two.gamma == K.from_int(2));
    auto five = is_indecomposable(K.from_int(5));
    CHECK_FALSE(five.indecomposable);
    CHECK(K.totally_positive(*five.beta));
    CHECK(K.totally_positive(*five.gamma));
    auto sig = is_indecomposable(parse_element(K, "-2-sqrt2"), true);
    CHECK(sig.indecomposable);
}

TEST_CASE("square roots") {
    auto K = FieldContext::q_sqrt2();
    CHECK(sqrt_element(K.from_int(2)) == parse_element(K, "sqrt2"));
    CHECK_FALSE(sqrt_element(K.from_int(3)));
    CHECK(sqrt_element(parse_element(K, "6+4*sqrt2")) == parse_element(K, "2+sqrt2"));
    auto L = k7168();
    auto r = sqrt_element(parse_element(L, "5+3*sqrt2"));
    REQUIRE(r);
    CHECK(*r * *r == parse_element(L, "5+3*sqrt2"));
    auto expected = parse_element(L, "(1+sqrt2)*x");
    CHECK((*r == expected || *r == -expected));
}

TEST_CASE("elements of given norm") {
    auto K = FieldContext::q_sqrt2();
    auto seven = elements_of_norm(K, 7);
    CHECK(seven.size() == 2);  // 3+sqrt2 and 3-sqrt2 up to units
    for (const auto& t : seven) CHECK(abs(K.norm(t)) == 7);
    CHECK(elements_of_norm(K, 3).empty());
    CHECK(elements_of_norm(K, 2).size() == 1);
}

TEST_CASE("squarefree witnesses") {
    auto K = FieldContext::q_sqrt2();
    CHECK_FALSE(squarefree_witness(parse_element(K, "5+3*sqrt2")));
    auto w = squarefree_witness(K.from_int(2));
    REQUIRE(w);
    CHECK(w->gamma * w->t * w->t == K.from_int(2));
    CHECK(K.is_unit(w->gamma));
    CHECK(abs(K.norm(w->t)) > 1);
    auto v = squarefree_witness(K.from_int(18));
    REQUIRE(v);
    CHECK(v->gamma * v->t * v->t == K.from_int(18));

    auto L = k7168();
    auto p7 = parse_element(L, "5+3*sqrt2");
    auto u = squarefree_witness(p7);
    REQUIRE(u);
    CHECK(u->gamma == L.one());
    CHECK(u->t * u->t == p7);
}

TEST_CASE("unsquare") {
    auto K = FieldContext::q_sqrt2();
    auto units = K.units();
    auto a = unsquare(K.from_int(2), units);
    CHECK(a.k == 1);
    CHECK(a.beta == parse_element(K, "2+sqrt2"));
    CHECK(a.mu == parse_element(K, "(1+sqrt2)^-2"));
    auto b = unsquare(parse_element(K, "2+sqrt2"), units);
    CHECK(b.k == 0);
    CHECK(b.mu == K.one());
    auto c = unsquare(parse_element(K, "6+4*sqrt2"), units);
    CHECK(c.k == 1);
    CHECK(c.mu == K.one());
    CHECK(c.beta == parse_element(K, "2+sqrt2"));
    CHECK_THROWS_AS(unsquare(parse_element(K, "1+sqrt2"), units), Error);
}

TEST_CASE("sums of squares") {
    auto K = FieldContext::q_sqrt2();
    auto two = sum_of_squares_test(K.from_int(2), 2);
    REQUIRE(two);
    CHECK((*two)[0] * (*two)[0] + (*two)[1] * (*two)[1] == K.from_int(2));
    auto lam2 = parse_element(K, "2*(2+sqrt2)");
    auto three = sum_of_squares_test(lam2, 3);
    REQUIRE(three);
    Element s = K.zero();
    for (const auto& w : *three) s = s + w * w;
    CHECK(s == lam2);
    auto Q = FieldContext::rationals();
    CHECK_FALSE(sum_of_squares_test(Q.from_int(7), 3));
    CHECK(sum_of_squares_test(Q.from_int(7), 4));
    CHECK_FALSE(sum_of_squares_test(parse_element(K, "2+sqrt2"), 5));
}
