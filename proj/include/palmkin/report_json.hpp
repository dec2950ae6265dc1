#pragma once

// JSON forms of reports, resolution studies, comparisons and reference tables.
// Wall-clock time is left out of report JSON so that output is byte-stable.

#include "palmkin/config.hpp"
#include "palmkin/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace palmkin {

namespace detail {

inline Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json vwrc_json(const std::optional<VwrcStats>& s) {
    if (!s) return nullptr;
    return {{"mean", s->mean}, {"p10", s->p10}, {"voxels", s->voxels}};
}

}  // namespace detail

inline Json to_json(const CaseReport& r) {
    Json j;
    j["case"] = r.spec.id;
    j["spec"] = to_json(r.spec);
    j["delta"] = r.delta;
    j["step"] = r.step;
    Json digits = Json::object();
    for (const auto& d : r.digits) {
        digits[std::string(to_string(d.digit))] = {{"axis_counts", d.axis_counts},
                                                   {"samples", d.samples},
                                                   {"voxels", d.voxels},
                                                   {"reachable_volume", d.volume},
                                                   {"reachable_change_pct", detail::opt(d.volume_change_pct)}};
    }
    j["digits"] = digits;
    Json pairs = Json::object();
    for (const auto& p : r.pairs) {
        pairs["thumb-" + std::string(to_string(p.finger))] = {
            {"voxels", p.voxels},
            {"overlap_volume", p.volume},
            {"overlap_ratio_own_pct", detail::opt(p.ratio_own_pct)},
            {"overlap_ratio_baseline_pct", detail::opt(p.ratio_baseline_pct)},
            {"overlap_change_pct", detail::opt(p.change_pct)},
            {"thumb_vwrc", detail::vwrc_json(p.thumb_vwrc)},
            {"finger_vwrc", detail::vwrc_json(p.finger_vwrc)}};
    }
    j["pairs"] = pairs;
    return j;
}

inline Json to_json(const ConvergenceStudy& s) {
    Json entries = Json::array();
    for (const auto& e : s.entries) {
        entries.push_back({{"digit", std::string(to_string(e.digit))},
                           {"delta", e.delta},
                           {"step", e.step},
                           {"voxels", e.voxels},
                           {"volume", e.volume},
                           {"change_pct", detail::opt(e.change_pct)}});
    }
    Json flags = Json::array();
    for (const auto& f : s.flags) {
        flags.push_back({{"digit", std::string(to_string(f.digit))}, {"delta", f.delta}, {"converged_step", detail::opt(f.step)}});
    }
    return {{"case", s.case_id}, {"threshold_pct", s.threshold_pct}, {"entries", entries}, {"flags", flags}};
}

inline Json to_json(const std::vector<ComparisonRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        out.push_back({{"case", r.ref.case_id},
                       {"digit", std::string(to_string(r.ref.digit))},
                       {"metric", r.ref.metric},
                       {"source", r.ref.source},
                       {"expected", r.ref.expected},
                       {"actual", detail::opt(r.actual)},
                       {"relative_error", detail::opt(r.relative_error)},
                       {"tolerance", r.ref.tolerance},
                       {"pass", r.pass}});
    }
    return out;
}

/// Angle steps may be numbers or strings of the form "pi/N".
inline double parse_step(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.rfind("pi/", 0) == 0) {
            try {
                std::size_t used = 0;
                const double n = std::stod(s.substr(3), &used);
                if (used == s.size() - 3 && n > 0.0) return std::numbers::pi / n;
            } catch (const std::exception&) {
            }
        }
    }
    throw ConfigurationError("step must be a number or \"pi/N\", got " + j.dump());
}

/// Parses {"entries": [...]}. Unknown digits or metrics are rejected here so a
/// bad reference file fails before any computation starts.
inline ReferenceTable reference_from_json(const Json& j) {
    using detail::optional_or;
    using detail::required;
    if (!j.contains("entries") || !j.at("entries").is_array()) throw ConfigurationError("expected an 'entries' array");
    ReferenceTable t;
    for (const auto& e : j.at("entries")) {
        ReferenceEntry r;
        r.case_id = required<int>(e, "case");
        case_spec(r.case_id);
        r.digit = digit_from_string(required<std::string>(e, "digit"));
        r.metric = required<std::string>(e, "metric");
        const auto& known = known_metrics();
        if (std::find(known.begin(), known.end(), r.metric) == known.end()) {
            throw ConfigurationError("unknown metric '" + r.metric + "'");
        }
        if (r.digit == Digit::thumb && r.metric.rfind("reachable_", 0) != 0) {
            throw ConfigurationError("metric '" + r.metric + "' is not defined for the thumb");
        }
        r.expected = required<double>(e, "expected");
        r.tolerance = required<double>(e, "tolerance");
        if (!(r.tolerance >= 0.0)) throw ConfigurationError("tolerance must be >= 0");
        r.delta = optional_or(e, "delta", kDefaultDelta);
        r.step = e.contains("step") ? parse_step(e.at("step")) : kDefaultStep;
        r.source = optional_or<std::string>(e, "source", "");
        t.entries.push_back(std::move(r));
    }
    return t;
}

inline ReferenceTable load_reference(const std::string& path) {
    try {
        return reference_from_json(read_json(path));
    } catch (const ConfigurationError& e) {
        throw ConfigurationError(path + ": " + e.what());
    }
}

}  // namespace palmkin
