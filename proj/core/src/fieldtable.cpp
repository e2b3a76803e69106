#include "trqf/fieldtable.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace trqf {

using nlohmann::json;

namespace {

Integer json_integer(const json& v, const char* what) {
    if (v.is_number_integer()) return Integer(static_cast<long>(v.get<long long>()));
    if (v.is_number_unsigned()) return Integer(std::to_string(v.get<unsigned long long>()));
    if (v.is_string()) {
        Rational q = parse_rational(v.get<std::string>());
        if (q.get_den() != 1) throw Error(ErrorCode::ParseError, std::string(what) + " must be an integer");
        return q.get_num();
    }
    throw Error(ErrorCode::ParseError, std::string(what) + " must be an integer");
}

Rational json_rational(const json& v, const char* what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    return Rational(json_integer(v, what));
}

std::vector<Integer> integer_array(const json& v, const char* what) {
    if (!v.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
    std::vector<Integer> out;
    for (const auto& x : v) out.push_back(json_integer(x, what));
    return out;
}

json integer_json(const Integer& n) {
    if (fits_int64(n)) return json(n.get_si());
    return json(n.get_str());
}

}  // namespace

FieldRecord parse_field_record(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "record must be a JSON object");
    for (const char* key : {"label", "degree", "poly", "basis", "disc", "h"})
        if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");

    FieldRecord r;
    if (!j["label"].is_string()) throw Error(ErrorCode::ParseError, "label must be a string");
    r.label = j["label"].get<std::string>();
    if (!j["degree"].is_number_integer()) throw Error(ErrorCode::ParseError, "degree must be an integer");
    r.degree = j["degree"].get<int>();
    if (r.degree < 1) throw Error(ErrorCode::ParseError, "degree must be positive");
    r.poly = integer_array(j["poly"], "poly");
    if (static_cast<int>(r.poly.size()) != r.degree + 1)
        throw Error(ErrorCode::ParseError, "poly must have degree+1 coefficients");
    if (r.poly.back() != 1) throw Error(ErrorCode::ParseError, "poly is not monic");
    const auto& basis = j["basis"];
    if (!basis.is_array() || static_cast<int>(basis.size()) != r.degree)
        throw Error(ErrorCode::ParseError, "basis must have degree rows");
    for (const auto& row : basis) {
        if (!row.is_array() || static_cast<int>(row.size()) != r.degree)
            throw Error(ErrorCode::ParseError, "basis rows must have degree entries");
        std::vector<Rational> v;
        for (const auto& x : row) v.push_back(json_rational(x, "basis entry"));
        r.basis.push_back(std::move(v));
    }
    r.disc = json_integer(j["disc"], "disc");
    r.h = json_integer(j["h"], "h").get_si();
    if (j.contains("h_plus") && !j["h_plus"].is_null()) r.h_plus = json_integer(j["h_plus"], "h_plus").get_si();
    if (j.contains("units")) {
        if (!j["units"].is_array()) throw Error(ErrorCode::ParseError, "units must be an array");
        for (const auto& u : j["units"]) {
            ElementData e;
            if (u.is_object()) {
                e.coords = integer_array(u.at("coords"), "unit coords");
                if (u.contains("denom")) e.denom = json_integer(u["denom"], "unit denom");
            } else {
                e.coords = integer_array(u, "unit");
            }
            if (static_cast<int>(e.coords.size()) != r.degree)
                throw Error(ErrorCode::ParseError, "unit must have degree coordinates");
            r.units.push_back(std::move(e));
        }
    }
    if (j.contains("sqrt2") && !j["sqrt2"].is_null()) {
        r.sqrt2 = integer_array(j["sqrt2"], "sqrt2");
        if (static_cast<int>(r.sqrt2->size()) != r.degree)
            throw Error(ErrorCode::ParseError, "sqrt2 must have degree coordinates");
    }
    if (j.contains("tags")) {
        if (!j["tags"].is_object()) throw Error(ErrorCode::ParseError, "tags must be an object");
        for (auto it = j["tags"].begin(); it != j["tags"].end(); ++it)
            r.tags[it.key()] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    }
    return r;
}

std::string serialize_field_record(const FieldRecord& r) {
    json j;
    j["label"] = r.label;
    j["degree"] = r.degree;
    json poly = json::array();
    for (const auto& c : r.poly) poly.push_back(integer_json(c));
    j["poly"] = poly;
    json basis = json::array();
    for (const auto& row : r.basis) {
        json jr = json::array();
        for (const auto& q : row) jr.push_back(q.get_num().get_str() + "/" + q.get_den().get_str());
        basis.push_back(jr);
    }
    j["basis"] = basis;
    j["disc"] = integer_json(r.disc);
    j["h"] = r.h;
    if (r.h_plus) j["h_plus"] = r.h_plus;
    if (!r.units.empty()) {
        json units = json::array();
        for (const auto& u : r.units) {
            json c = json::array();
            for (const auto& x : u.coords) c.push_back(integer_json(x));
            if (u.denom == 1)
                units.push_back(c);
            else
                units.push_back(json{{"coords", c}, {"denom", integer_json(u.denom)}});
        }
        j["units"] = units;
    }
    if (r.sqrt2) {
        json s = json::array();
        for (const auto& x : *r.sqrt2) s.push_back(integer_json(x));
        j["sqrt2"] = s;
    }
    if (!r.tags.empty()) j["tags"] = r.tags;
    return j.dump();
}

FieldTable::FieldTable(std::vector<FieldRecord> records) : records_(std::move(records)) {
    std::set<std::string> seen;
    for (const auto& r : records_) {
        if (!seen.insert(r.label).second) throw Error(ErrorCode::ValidationError, r.label + ": duplicate label");
        if (r.disc <= 0) throw Error(ErrorCode::ValidationError, r.label + ": discriminant must be positive");
    }
}

const FieldRecord* FieldTable::find_label(const std::string& label) const {
    for (const auto& r : records_)
        if (r.label == label) return &r;
    return nullptr;
}

std::vector<const FieldRecord*> FieldTable::find_disc(const Integer& disc) const {
    std::vector<const FieldRecord*> out;
    for (const auto& r : records_)
        if (r.disc == disc) out.push_back(&r);
    return out;
}

FieldTable ingest_fields(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open field table '" + path + "'");
    std::vector<FieldRecord> recs;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            recs.push_back(parse_field_record(line));
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return FieldTable(std::move(recs));
}

FieldRecord read_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open field file '" + path + "'");
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) return parse_field_record(line);
    throw Error(ErrorCode::ParseError, "field file '" + path + "' is empty");
}

FieldContext load_field_file(const std::string& path) { return FieldContext::load(read_field_file(path)); }

}  // namespace trqf
