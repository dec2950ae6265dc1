#pragma once

// Normalized hand geometry (hand length HL = 1).

#include "palmkin/error.hpp"
#include "palmkin/kinematics.hpp"

#include <array>
#include <cmath>
#include <string>

namespace palmkin {

struct HandParams {
    double hand_length = 1.0;      // HL
    double hand_width = 0.54;      // HW = 0.54 HL = 3 a_w
    double finger_spacing = 0.18;  // a_w
    double palm_depth = 0.46;      // d_a
    std::array<double, 3> three_flexion_links{0.18, 0.18, 0.18};  // l_3d1..3
    std::array<double, 2> two_flexion_links{0.18, 0.36};          // l_2d1, l_2d2
    double thumb_offset = 0.10;                                   // l_t1
    std::array<double, 3> thumb_links{0.20, 0.20, 0.20};          // l_t2..4
    /// Translation of the thumb's first joint frame in P_o. Not given by the
    /// model tables; this default was fitted to the Case-1 overlap volumes on a
    /// 0.025 grid. Set to zero for the unshifted frame.
    Vec3 thumb_base{-0.20, -0.15, 0.05};

    friend bool operator==(const HandParams&, const HandParams&) = default;
};

/**
 * Checks finiteness, non-negativity and the geometric identities
 *   HW = 0.54 HL,  HW = 3 a_w,  d_a + sum(l_3d) = HL,  sum(l_2d) = sum(l_3d).
 */
inline void validate(const HandParams& p, double tol = 1e-9) {
    const auto check_len = [](double v, const char* name) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ParameterError(std::string("hand parameter ") + name + " must be finite and >= 0");
        }
    };
    check_len(p.hand_length, "hand_length");
    check_len(p.hand_width, "hand_width");
    check_len(p.finger_spacing, "finger_spacing");
    check_len(p.palm_depth, "palm_depth");
    for (double l : p.three_flexion_links) check_len(l, "three_flexion_links");
    for (double l : p.two_flexion_links) check_len(l, "two_flexion_links");
    check_len(p.thumb_offset, "thumb_offset");
    for (double l : p.thumb_links) check_len(l, "thumb_links");
    if (!p.thumb_base.allFinite()) throw ParameterError("thumb_base must be finite");

    const double l3 = p.three_flexion_links[0] + p.three_flexion_links[1] + p.three_flexion_links[2];
    const double l2 = p.two_flexion_links[0] + p.two_flexion_links[1];
    if (std::abs(p.hand_width - 0.54 * p.hand_length) > tol) {
        throw ParameterError("hand_width must equal 0.54 * hand_length");
    }
    if (std::abs(p.hand_width - 3.0 * p.finger_spacing) > tol) {
        throw ParameterError("hand_width must equal 3 * finger_spacing");
    }
    if (std::abs(p.palm_depth + l3 - p.hand_length) > tol) {
        throw ParameterError("palm_depth + three-flexion phalanges must equal hand_length");
    }
    if (std::abs(l2 - l3) > tol) {
        throw ParameterError("two-flexion phalanges must preserve the three-flexion finger length");
    }
}

}  // namespace palmkin
