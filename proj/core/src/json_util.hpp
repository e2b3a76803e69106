#pragma once

#include "trqf/enumeration.hpp"
#include "trqf/numberfield.hpp"

#include <json.hpp>

#include <vector>

namespace trqf::detail {

inline nlohmann::json integer_json(const Integer& n) {
    if (fits_int64(n)) return nlohmann::json(n.get_si());
    return nlohmann::json(n.get_str());
}

inline Integer integer_from(const nlohmann::json& v) {
    if (v.is_number_integer()) return Integer(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return Integer(v.get<std::string>());
    throw Error(ErrorCode::ParseError, "expected an integer");
}

inline nlohmann::json rational_json(const Rational& q) {
    if (q.get_den() == 1) return integer_json(q.get_num());
    return nlohmann::json(q.get_str());
}

// Plain coordinate array when integral, {"coords", "denom"} otherwise.
inline nlohmann::json element_json(const Element& e) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : e.coords()) c.push_back(integer_json(x));
    if (e.denom() == 1) return c;
    return nlohmann::json{{"coords", c}, {"denom", integer_json(e.denom())}};
}

inline Element element_from(const FieldContext& K, const nlohmann::json& v) {
    ElementData d;
    const nlohmann::json& c = v.is_object() ? v.at("coords") : v;
    if (!c.is_array() || static_cast<int>(c.size()) != K.degree())
        throw Error(ErrorCode::ParseError, "element must have degree coordinates");
    for (const auto& x : c) d.coords.push_back(integer_from(x));
    if (v.is_object() && v.contains("denom")) d.denom = integer_from(v["denom"]);
    return K.make(d);
}

inline nlohmann::json elements_json(const std::vector<Element>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : v) a.push_back(element_json(e));
    return a;
}

inline std::vector<Element> elements_from(const FieldContext& K, const nlohmann::json& v) {
    std::vector<Element> out;
    for (const auto& x : v) out.push_back(element_from(K, x));
    return out;
}

inline nlohmann::json box_json(const EnumerationBox& b) {
    nlohmann::json lo = nlohmann::json::array(), hi = nlohmann::json::array();
    for (const auto& x : b.lo) lo.push_back(integer_json(x));
    for (const auto& x : b.hi) hi.push_back(integer_json(x));
    return nlohmann::json{{"lo", lo}, {"hi", hi}, {"bits", b.bits}};
}

inline EnumerationBox box_from(const nlohmann::json& v) {
    EnumerationBox b;
    for (const auto& x : v.at("lo")) b.lo.push_back(integer_from(x));
    for (const auto& x : v.at("hi")) b.hi.push_back(integer_from(x));
    b.bits = v.value("bits", 0u);
    return b;
}

}  // namespace trqf::detail
