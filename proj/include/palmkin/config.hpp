#pragma once

// JSON config files for hand parameters and case definitions.

#include "palmkin/cases.hpp"
#include "palmkin/error.hpp"
#include "palmkin/params.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace palmkin {

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
T required(const Json& j, const char* key) {
    if (!j.contains(key)) throw ConfigurationError(std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigurationError(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <class T>
T optional_or(const Json& j, const char* key, T fallback) {
    return j.contains(key) ? required<T>(j, key) : fallback;
}

inline Json limits_json(const JointLimits& l) { return Json::array({l.lo, l.hi}); }

inline JointLimits limits_from(const Json& j, const char* key, JointLimits fallback) {
    if (!j.contains(key)) return fallback;
    const auto v = required<std::vector<double>>(j, key);
    if (v.size() != 2) throw ConfigurationError(std::string("'") + key + "' must be [lo, hi]");
    return {v[0], v[1]};
}

}  // namespace detail

inline Json to_json(const HandParams& p) {
    Json j;
    j["hand_length"] = p.hand_length;
    j["hand_width"] = p.hand_width;
    j["finger_spacing"] = p.finger_spacing;
    j["palm_depth"] = p.palm_depth;
    j["three_flexion_links"] = p.three_flexion_links;
    j["two_flexion_links"] = p.two_flexion_links;
    j["thumb_offset"] = p.thumb_offset;
    j["thumb_links"] = p.thumb_links;
    j["thumb_base"] = {p.thumb_base.x(), p.thumb_base.y(), p.thumb_base.z()};
    return j;
}

/// Missing keys keep their defaults; the result is validated.
inline HandParams hand_params_from_json(const Json& j) {
    using detail::optional_or;
    if (!j.is_object()) throw ConfigurationError("hand parameters must be a JSON object");
    HandParams p;
    p.hand_length = optional_or(j, "hand_length", p.hand_length);
    p.hand_width = optional_or(j, "hand_width", p.hand_width);
    p.finger_spacing = optional_or(j, "finger_spacing", p.finger_spacing);
    p.palm_depth = optional_or(j, "palm_depth", p.palm_depth);
    p.three_flexion_links = optional_or(j, "three_flexion_links", p.three_flexion_links);
    p.two_flexion_links = optional_or(j, "two_flexion_links", p.two_flexion_links);
    p.thumb_offset = optional_or(j, "thumb_offset", p.thumb_offset);
    p.thumb_links = optional_or(j, "thumb_links", p.thumb_links);
    const auto base = optional_or(j, "thumb_base", std::array<double, 3>{p.thumb_base.x(), p.thumb_base.y(),
                                                                         p.thumb_base.z()});
    p.thumb_base = Vec3(base[0], base[1], base[2]);
    validate(p);
    return p;
}

inline Json to_json(const CaseSpec& c) {
    using detail::limits_json;
    Json j;
    j["id"] = c.id;
    Json palm = Json::array();
    if (c.ring_side_palm) palm.push_back("ring_side");
    if (c.little_side_palm) palm.push_back("little_side");
    j["palm_joints"] = palm;
    j["ring_flexion"] = c.ring_flexion;
    j["little_flexion"] = c.little_flexion;
    Json thumb = Json::array();
    for (const auto& l : c.thumb) thumb.push_back(limits_json(l));
    j["thumb_limits"] = thumb;
    j["finger_limits"] = {{"abduction", limits_json(c.finger.abduction)},
                          {"proximal", limits_json(c.finger.proximal)},
                          {"middle", limits_json(c.finger.middle)},
                          {"distal", limits_json(c.finger.distal)}};
    j["ring_side_limits"] = limits_json(c.ring_side_limits);
    j["little_side_limits"] = limits_json(c.little_side_limits);
    j["coupling_bound"] = c.coupling_bound;
    j["total_dof"] = c.total_dof();
    return j;
}

inline CaseSpec case_from_json(const Json& j) {
    using detail::limits_from;
    using detail::optional_or;
    using detail::required;
    if (!j.is_object()) throw ConfigurationError("case must be a JSON object");
    CaseSpec c;
    c.id = required<int>(j, "id");
    for (const auto& name : optional_or(j, "palm_joints", std::vector<std::string>{})) {
        if (name == "ring_side") {
            c.ring_side_palm = true;
        } else if (name == "little_side") {
            c.little_side_palm = true;
        } else {
            throw ConfigurationError("unknown palm joint '" + name + "'");
        }
    }
    c.ring_flexion = optional_or(j, "ring_flexion", c.ring_flexion);
    c.little_flexion = optional_or(j, "little_flexion", c.little_flexion);
    if (j.contains("thumb_limits")) {
        const auto& t = j.at("thumb_limits");
        if (!t.is_array() || t.size() != c.thumb.size()) {
            throw ConfigurationError("'thumb_limits' must list 5 [lo, hi] pairs");
        }
        for (std::size_t i = 0; i < c.thumb.size(); ++i) {
            const Json wrap{{"l", t[i]}};
            c.thumb[i] = limits_from(wrap, "l", c.thumb[i]);
        }
    }
    if (j.contains("finger_limits")) {
        const auto& f = j.at("finger_limits");
        c.finger.abduction = limits_from(f, "abduction", c.finger.abduction);
        c.finger.proximal = limits_from(f, "proximal", c.finger.proximal);
        c.finger.middle = limits_from(f, "middle", c.finger.middle);
        c.finger.distal = limits_from(f, "distal", c.finger.distal);
    }
    c.ring_side_limits = limits_from(j, "ring_side_limits", c.ring_side_limits);
    c.little_side_limits = limits_from(j, "little_side_limits", c.little_side_limits);
    c.coupling_bound = optional_or(j, "coupling_bound", c.coupling_bound);
    if (j.contains("total_dof") && required<int>(j, "total_dof") != c.total_dof()) {
        throw ConfigurationError("case " + std::to_string(c.id) + ": total_dof does not match its joints");
    }
    validate(c);
    return c;
}

/// All seven built-in cases as {"cases": [...]}.
inline Json case_catalog() {
    Json cases = Json::array();
    for (int id = 1; id <= 7; ++id) cases.push_back(to_json(case_spec(id)));
    return Json{{"cases", cases}};
}

inline std::vector<CaseSpec> cases_from_json(const Json& j) {
    if (!j.contains("cases") || !j.at("cases").is_array()) throw ConfigurationError("expected a 'cases' array");
    std::vector<CaseSpec> out;
    for (const auto& c : j.at("cases")) out.push_back(case_from_json(c));
    return out;
}

inline Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open for reading");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw IoError(path, std::string("invalid JSON: ") + e.what());
    }
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    out << text;
    if (!out) throw IoError(path, "write failed");
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline HandParams load_hand_params(const std::string& path) {
    try {
        return hand_params_from_json(read_json(path));
    } catch (const ConfigurationError& e) {
        throw ConfigurationError(path + ": " + e.what());
    }
}

}  // namespace palmkin
