#pragma once

#include "trqf/fieldtable.hpp"
#include "trqf/obstruction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trqf {

struct ScanOptions {
    Integer disc_cap = 20000;
    bool unit_filter = true;       // only fields with U+ = U^2
    unsigned threads = 0;          // 0: hardware concurrency
    bool deterministic = false;    // omit timings and thread count from reports
    std::size_t pool_size = 0;     // obstruction search pool cap, 0 = whole pool
    EnumerationOptions enumeration;
};

// How U+ = U^2 was decided for a record.
struct UnitSquareStatus {
    bool holds = false;
    std::string source;  // "h_plus" (h+ = h) or "signatures" (unit sign vectors)
};

UnitSquareStatus unit_square_status(const FieldContext& K);

// True when a lies in Q(sqrt2), tested on coordinates against the sqrt2 tag.
bool in_q_sqrt2(const Element& a);

// 2^12 / 5^5 * house^12: upper bound on disc K for K = Q(beta), house(beta) = house.
double quartic_disc_bound(double house);

// ------------------------------------------------------------ small condition

struct BoundResult {
    std::string bound;                // "3lambda" or "6"
    Element value;
    std::size_t solutions = 0;        // all omega with omega^2 <= value
    EnumerationBox box;
    bool exceptional = false;
    std::optional<Element> witness;   // omega outside Q(sqrt2)
    double witness_house = 0;
    std::optional<bool> generates;    // witness generates K
    std::optional<bool> disc_bound_ok;
};

struct SmallConditionVerdict {
    std::string label;
    Integer disc;
    long h = 0, h_plus = 0;
    std::string status;  // "checked", "filtered", "not_applicable", "error"
    std::optional<UnitSquareStatus> units;
    std::vector<BoundResult> bounds;
    std::string error;
    double seconds = 0;
};

struct SmallConditionScan {
    ScanOptions options;
    std::vector<SmallConditionVerdict> verdicts;
    double seconds = 0;
    // Labels of fields exceptional for bound "3lambda" or "6".
    std::vector<std::string> exceptional(const std::string& bound) const;
};

SmallConditionScan scan_small_condition(const FieldTable& table, const ScanOptions& opt = {});
SmallConditionVerdict small_condition(const FieldRecord& rec, const ScanOptions& opt = {});

// ------------------------------------------------------------ obstructions

struct ObstructionVerdict {
    std::string label;
    Integer disc;
    long h = 0, h_plus = 0;
    // "excluded_unit_signs" (U+ != U^2), "covered_free" (h = 1),
    // "certificate", "no_certificate", "pool_exhausted", "not_applicable", "error"
    std::string verdict;
    std::optional<UnitSquareStatus> units;
    std::optional<ObstructionCertificate> certificate;
    std::string error;
    double seconds = 0;
};

struct ObstructionScan {
    ScanOptions options;
    std::vector<ObstructionVerdict> verdicts;
    double seconds = 0;
};

ObstructionScan scan_obstructions(const FieldTable& table, const ScanOptions& opt = {});
ObstructionVerdict obstruction_verdict(const FieldRecord& rec, const ScanOptions& opt = {});

// ------------------------------------------------------------ identities

struct IdentityCheck {
    std::string name;
    std::string lhs, rhs;
    bool ok = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> identities;
    double expected_max = 0;       // 2^6 5^-5/2
    double grid_max = 0;           // best grid value before refinement
    double refined_max = 0;
    std::vector<double> maximizer; // sorted coordinates of the refined maximum
    double critical_value = 0;     // g at (-1, -1/sqrt5, 1/sqrt5, 1)
    bool max_ok = false;
    std::string bound_exact;       // 2^12/5^5 (6+3sqrt2)^6 written over Q(sqrt2)
    double bound_value = 0;
    bool bound_ok = false;
    bool ok() const;
};

// Throws IdentityMismatch when one of the polynomial identities fails.
IdentityReport verify_identities();

// ------------------------------------------------------------ reports

std::string report_json(const SmallConditionScan& s);
std::string report_json(const ObstructionScan& s);
std::string report_json(const IdentityReport& r);

}  // namespace trqf
