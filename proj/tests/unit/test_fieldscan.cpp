#include "doctest.h"

#include "trqf/fieldscan.hpp"

#include <json.hpp>

using namespace trqf;

namespace {

const FieldTable& table20000() {
    static FieldTable t = ingest_fields(std::string(TRQF_DATA_DIR) + "/quartic_sqrt2_20000.jsonl");
    return t;
}

const FieldRecord& record(const char* label) {
    static FieldTable big = ingest_fields(std::string(TRQF_DATA_DIR) + "/quartic_sqrt2_260000.jsonl");
    const FieldRecord* r = big.find_label(label);
    REQUIRE(r);
    return *r;
}

using Labels = std::vector<std::string>;

}  // namespace

TEST_CASE("membership in Q(sqrt2)") {
    auto K = FieldContext::load(record("4.4.1600.1"));
    CHECK(in_q_sqrt2(*K.sqrt2()));
    CHECK(in_q_sqrt2(K.from_int(3) - *K.sqrt2()));
    CHECK_FALSE(in_q_sqrt2(K.basis_element(1)));
    CHECK(in_q_sqrt2(K.zero()));
    CHECK_THROWS_AS(in_q_sqrt2(FieldContext::rationals().one()), Error);
}

TEST_CASE("small condition scan with the unit filter") {
    ScanOptions opt;
    opt.threads = 2;
    auto s = scan_small_condition(table20000(), opt);
    CHECK(s.exceptional("3lambda") == Labels{"4.4.2048.1", "4.4.2624.1"});
    CHECK(s.exceptional("6") == Labels{"4.4.1600.1", "4.4.2048.1", "4.4.2624.1", "4.4.10816.1"});
    for (const auto& v : s.verdicts) {
        CHECK(v.error.empty());
        for (const auto& b : v.bounds) {
            if (!b.witness) continue;
            CHECK_FALSE(in_q_sqrt2(*b.witness));
            FieldContext K = b.witness->field();
            CHECK(K.totally_nonnegative(b.value - b.witness->square()));
            if (b.disc_bound_ok) CHECK(*b.disc_bound_ok);
        }
    }
}

TEST_CASE("small condition scan without the unit filter") {
    ScanOptions opt;
    opt.unit_filter = false;
    auto s = scan_small_condition(table20000(), opt);
    CHECK(s.exceptional("3lambda") == Labels{"4.4.2048.1", "4.4.2624.1", "4.4.7168.1", "4.4.18432.1"});
    CHECK(s.exceptional("6") == Labels{"4.4.1600.1", "4.4.2048.1", "4.4.2304.1", "4.4.2624.1", "4.4.7168.1",
                                       "4.4.10816.1", "4.4.14336.1"});
}

TEST_CASE("small condition scan with a smaller cap") {
    ScanOptions opt;
    opt.disc_cap = 1600;
    auto s = scan_small_condition(table20000(), opt);
    REQUIRE(s.verdicts.size() == 1);
    CHECK(s.exceptional("6") == Labels{"4.4.1600.1"});
    CHECK(s.exceptional("3lambda").empty());
}

TEST_CASE("reports do not depend on the thread count") {
    ScanOptions a;
    a.deterministic = true;
    a.unit_filter = false;
    a.threads = 1;
    ScanOptions b = a;
    b.threads = 3;
    CHECK(report_json(scan_small_condition(table20000(), a)) == report_json(scan_small_condition(table20000(), b)));
    auto j = nlohmann::json::parse(report_json(scan_small_condition(table20000(), a)));
    CHECK(j["metadata"]["command"] == "small_condition");
    CHECK_FALSE(j["metadata"].contains("seconds"));
}

TEST_CASE("obstruction verdicts") {
    ScanOptions opt;
    CHECK(obstruction_verdict(record("4.4.1600.1"), opt).verdict == "covered_free");
    CHECK(obstruction_verdict(record("4.4.57600.1"), opt).verdict == "excluded_unit_signs");
    CHECK(obstruction_verdict(record("4.4.12544.1"), opt).verdict == "excluded_unit_signs");
    auto v = obstruction_verdict(record("4.4.51200.1"), opt);
    REQUIRE(v.verdict == "certificate");
    CHECK(revalidate(*v.certificate));

    FieldTable t({record("4.4.1600.1"), record("4.4.51200.1"), record("4.4.57600.1")});
    ScanOptions all;
    all.disc_cap = 60000;
    all.deterministic = true;
    auto s = scan_obstructions(t, all);
    REQUIRE(s.verdicts.size() == 3);
    auto j = nlohmann::json::parse(report_json(s));
    CHECK(j["verdicts"][1]["verdict"] == "certificate");
    auto K = FieldContext::load(record("4.4.51200.1"));
    CHECK(revalidate(certificate_from_json(K, j["verdicts"][1]["certificate"].dump())));
}

TEST_CASE("identities") {
    auto r = verify_identities();
    CHECK(r.identities.size() == 4);
    CHECK(r.max_ok);
    CHECK(std::abs(r.refined_max - 1.1448668) < 1e-6);
    CHECK(r.bound_ok);
    CHECK(r.ok());
    CHECK(quartic_disc_bound(std::sqrt(6 + 3 * std::sqrt(2.0))) == doctest::Approx(1513496.96).epsilon(1e-8));
}
