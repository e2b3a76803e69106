#pragma once

// Oracle-based property suites shared by the property tests and the
// acceptance runner.

#include "trqf/fieldscan.hpp"

#include <random>
#include <string>

namespace trqf::props {

struct SuiteResult {
    std::string name;
    int total = 0;
    int failed = 0;
    std::string first_failure;
    bool ok() const { return total > 0 && failed == 0; }
    void check(bool cond, const std::string& what);
};

// Q(sqrt m) for squarefree m > 1 with its ring of integers.
FieldContext quadratic(long m);
Element random_element(const FieldContext& K, std::mt19937& rng, int range, bool integral = true);
Element random_totally_positive(const FieldContext& K, std::mt19937& rng, int range);
double house_d(const Element& a);

SuiteResult enumeration_completeness(const std::string& data_dir, int queries = 50);
SuiteResult dual_of_dual(const std::string& data_dir, int grams = 20);
SuiteResult norm_multiplicativity(const std::string& data_dir, int pairs = 200);
SuiteResult unsquare_round_trip(const std::string& data_dir, int inputs = 20);
// Every certificate produced by an obstruction scan of the table up to
// disc_cap re-validates after a JSON round trip, and a tampered copy does not.
SuiteResult certificate_revalidation(const std::string& data_dir, long disc_cap = 120000);

}  // namespace trqf::props
