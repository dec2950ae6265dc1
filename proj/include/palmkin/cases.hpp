#pragma once

/**
 * @file cases.hpp
 * @brief The seven palm/finger DoF configurations and their joint limits.
 *
 * | case | palm joints         | ring flexion | little flexion |
 * |------|---------------------|--------------|----------------|
 * | 1    | -                   | 3            | 3              |
 * | 2    | little side         | 3            | 3              |
 * | 3    | ring side           | 3            | 3              |
 * | 4    | ring + little side  | 3            | 3              |
 * | 5    | little side         | 3            | 2              |
 * | 6    | ring side           | 2            | 3              |
 * | 7    | ring + little side  | 2            | 2              |
 *
 * The ring-side palm joint (theta_2r) sits between the middle and ring fingers
 * and carries both the ring and little fingers; the little-side joint
 * (theta_2l) sits between the ring and little fingers.
 */

#include "palmkin/error.hpp"
#include "palmkin/params.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace palmkin {

struct JointLimits {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const JointLimits&, const JointLimits&) = default;
};

/// Abduction followed by up to three flexion joints (proximal first).
struct FingerLimits {
    JointLimits abduction{-std::numbers::pi / 12, std::numbers::pi / 12};
    JointLimits proximal{-std::numbers::pi / 2, std::numbers::pi / 9};
    JointLimits middle{-std::numbers::pi / 2, 0.0};
    JointLimits distal{-std::numbers::pi / 2, 0.0};

    friend bool operator==(const FingerLimits&, const FingerLimits&) = default;
};

struct CaseSpec {
    int id = 1;
    bool ring_side_palm = false;    // theta_2r
    bool little_side_palm = false;  // theta_2l
    int ring_flexion = 3;
    int little_flexion = 3;

    std::array<JointLimits, 5> thumb{{{0.0, std::numbers::pi / 2},
                                      {-std::numbers::pi / 2, 0.0},
                                      {-std::numbers::pi / 6, std::numbers::pi / 6},
                                      {-std::numbers::pi / 2, 0.0},
                                      {-std::numbers::pi / 2, 0.0}}};
    // Finger limits are identical with and without palm motion.
    FingerLimits finger{};
    JointLimits ring_side_limits{0.0, std::numbers::pi / 9};
    JointLimits little_side_limits{0.0, std::numbers::pi / 6};
    /// theta_2r + theta_2l bound, active only when both palm joints drive one chain.
    double coupling_bound = 11.0 * std::numbers::pi / 45.0;

    int palm_dof() const { return (ring_side_palm ? 1 : 0) + (little_side_palm ? 1 : 0); }
    bool coupled() const { return ring_side_palm && little_side_palm; }

    /// 5 (thumb) + 4 + 4 (index, middle) + ring + little + palm.
    int total_dof() const { return 5 + 4 + 4 + (1 + ring_flexion) + (1 + little_flexion) + palm_dof(); }

    friend bool operator==(const CaseSpec&, const CaseSpec&) = default;
};

inline void validate(const CaseSpec& c) {
    const auto flex_ok = [](int f) { return f == 2 || f == 3; };
    if (!flex_ok(c.ring_flexion) || !flex_ok(c.little_flexion)) {
        throw ConfigurationError("case " + std::to_string(c.id) + ": finger flexion DoF must be 2 or 3");
    }
    const auto lim_ok = [](const JointLimits& l) { return std::isfinite(l.lo) && std::isfinite(l.hi) && l.lo <= l.hi; };
    for (const auto& l : c.thumb) {
        if (!lim_ok(l)) throw ConfigurationError("case " + std::to_string(c.id) + ": invalid thumb limits");
    }
    for (const auto& l : {c.finger.abduction, c.finger.proximal, c.finger.middle, c.finger.distal,
                          c.ring_side_limits, c.little_side_limits}) {
        if (!lim_ok(l)) throw ConfigurationError("case " + std::to_string(c.id) + ": invalid joint limits");
    }
    if (!std::isfinite(c.coupling_bound)) throw ConfigurationError("coupling bound must be finite");
}

inline CaseSpec case_spec(int id) {
    CaseSpec c;
    c.id = id;
    switch (id) {
        case 1: break;
        case 2: c.little_side_palm = true; break;
        case 3: c.ring_side_palm = true; break;
        case 4: c.ring_side_palm = c.little_side_palm = true; break;
        case 5:
            c.little_side_palm = true;
            c.little_flexion = 2;
            break;
        case 6:
            c.ring_side_palm = true;
            c.ring_flexion = 2;
            break;
        case 7:
            c.ring_side_palm = c.little_side_palm = true;
            c.ring_flexion = c.little_flexion = 2;
            break;
        default: throw ConfigurationError("case id must be in 1..7, got " + std::to_string(id));
    }
    return c;
}

inline HandParams normalized_params() { return HandParams{}; }

}  // namespace palmkin
