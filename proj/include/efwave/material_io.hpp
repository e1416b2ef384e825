#pragma once

#include <string>

#include <json.hpp>

#include "efwave/material.hpp"

namespace efwave {

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& where,
                             const std::string& field) {
    if (!j.contains(field))
        throw ParseError("material file: missing field '" + where + "." + field + "'");
    if (!j.at(field).is_number())
        throw ParseError("material file: field '" + where + "." + field + "' must be a number");
    return j.at(field).get<double>();
}

inline RationalFRF parse_frf(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object())
        throw ParseError("material file: section '" + where + "' must be an object");
    const double constant = require_number(j, where, "constant");
    std::vector<RealPole> poles;
    std::vector<ComplexPair> pairs;
    if (j.contains("real_poles")) {
        const auto& arr = j.at("real_poles");
        if (!arr.is_array())
            throw ParseError("material file: '" + where + ".real_poles' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = where + ".real_poles[" + std::to_string(i) + "]";
            poles.push_back({require_number(arr[i], w, "residue"), require_number(arr[i], w, "pole")});
        }
    }
    if (j.contains("complex_pairs")) {
        const auto& arr = j.at("complex_pairs");
        if (!arr.is_array())
            throw ParseError("material file: '" + where + ".complex_pairs' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = where + ".complex_pairs[" + std::to_string(i) + "]";
            pairs.push_back({require_number(arr[i], w, "b"), require_number(arr[i], w, "c"),
                             require_number(arr[i], w, "beta"), require_number(arr[i], w, "gamma")});
        }
    }
    return RationalFRF(constant, std::move(poles), std::move(pairs));
}

} // namespace detail

/// Parse a material file (schema: docs/material_format.md).
inline EquivalentFluid parse_material(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("material file: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("material file: top level must be an object");
    if (!j.contains("name") || !j.at("name").is_string())
        throw ParseError("material file: missing string field 'name'");
    if (!j.contains("compressibility"))
        throw ParseError("material file: missing section 'compressibility'");
    if (!j.contains("specific_volume"))
        throw ParseError("material file: missing section 'specific_volume'");
    EquivalentFluid m;
    m.name = j.at("name").get<std::string>();
    m.compressibility = detail::parse_frf(j.at("compressibility"), "compressibility");
    m.specific_volume = detail::parse_frf(j.at("specific_volume"), "specific_volume");
    return m;
}

inline std::string serialize_material(const EquivalentFluid& mat) {
    using json = nlohmann::ordered_json;
    auto frf = [](const RationalFRF& m) {
        json j;
        j["constant"] = m.constant();
        j["real_poles"] = json::array();
        for (const auto& p : m.real_poles())
            j["real_poles"].push_back({{"residue", p.residue}, {"pole", p.pole}});
        j["complex_pairs"] = json::array();
        for (const auto& p : m.complex_pairs())
            j["complex_pairs"].push_back(
                {{"b", p.b}, {"c", p.c}, {"beta", p.beta}, {"gamma", p.gamma}});
        return j;
    };
    json j;
    j["name"] = mat.name;
    j["compressibility"] = frf(mat.compressibility);
    j["specific_volume"] = frf(mat.specific_volume);
    return j.dump(2) + "\n";
}

} // namespace efwave
