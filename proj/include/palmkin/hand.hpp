#pragma once

/**
 * @file hand.hpp
 * @brief Assembles the five digit chains and their joint grids for a case.
 *
 * Hand frame P_o: +y runs along the fingers, +z across the palm from the index
 * (z = 0) to the little finger (z = 3 a_w), +x is the palmar direction that
 * finger flexion moves toward. Finger bases sit at lateral offsets
 * 0, a_w, 2 a_w, 3 a_w for index, middle, ring, little.
 */

#include "palmkin/cases.hpp"
#include "palmkin/kinematics.hpp"
#include "palmkin/params.hpp"
#include "palmkin/sampling.hpp"

#include <numbers>
#include <optional>
#include <vector>

namespace palmkin {

namespace detail {

inline constexpr double kPi = std::numbers::pi;

inline DhRow fixed_row(double alpha, double a, double d, double theta = 0.0) {
    return {alpha, a, d, FixedTheta{theta}};
}

inline DhRow joint_row(double alpha, double a, double d, std::size_t joint, double offset = 0.0) {
    return {alpha, a, d, VariableTheta{joint, offset}};
}

// Flexion links starting at joint `first`, ending in the tool-tip row.
inline void append_phalanges(std::vector<DhRow>& rows, const HandParams& p, int flexion, std::size_t first) {
    if (flexion == 3) {
        rows.push_back(joint_row(0.0, p.three_flexion_links[0], 0.0, first));
        rows.push_back(joint_row(0.0, p.three_flexion_links[1], 0.0, first + 1));
        rows.push_back(fixed_row(0.0, p.three_flexion_links[2], 0.0));
    } else {
        rows.push_back(joint_row(0.0, p.two_flexion_links[0], 0.0, first));
        rows.push_back(fixed_row(0.0, p.two_flexion_links[1], 0.0));
    }
}

inline KinematicChain thumb_chain(const HandParams& p) {
    std::vector<DhRow> rows{
        joint_row(-kPi / 3, 0.0, 0.0, 0),
        joint_row(-kPi / 2, p.thumb_offset, 0.0, 1),
        joint_row(kPi / 2, p.thumb_links[0], 0.0, 2),
        joint_row(-kPi / 2, 0.0, 0.0, 3),
        joint_row(0.0, p.thumb_links[1], 0.0, 4),
        fixed_row(0.0, p.thumb_links[2], 0.0),
    };
    return KinematicChain(Digit::thumb, std::move(rows), Transform::translation_only(p.thumb_base));
}

// Finger without palm joints, base at lateral offset `lateral`.
inline KinematicChain plain_finger(Digit label, const HandParams& p, double lateral, int flexion) {
    std::vector<DhRow> rows{
        fixed_row(0.0, 0.0, lateral, kPi / 2),
        joint_row(kPi / 2, p.palm_depth, 0.0, 0),
        joint_row(-kPi / 2, 0.0, 0.0, 1),
    };
    append_phalanges(rows, p, flexion, 2);
    return KinematicChain(label, std::move(rows));
}

// Finger carried by palm joints. `palm_links` are the lateral link lengths
// between successive palm joints; `tail` is the remaining lateral distance to
// the finger base.
inline KinematicChain palm_finger(Digit label, const HandParams& p, const std::vector<double>& palm_links,
                                  double tail, int flexion) {
    std::vector<DhRow> rows{fixed_row(-kPi / 2, 0.0, 0.0, -kPi / 2)};
    std::size_t joint = 0;
    for (double link : palm_links) rows.push_back(joint_row(0.0, link, 0.0, joint++));
    rows.push_back(fixed_row(0.0, tail, p.palm_depth));
    rows.push_back(joint_row(-kPi / 2, 0.0, 0.0, joint, -kPi / 2));
    rows.push_back(joint_row(-kPi / 2, 0.0, 0.0, joint + 1));
    append_phalanges(rows, p, flexion, joint + 2);
    return KinematicChain(label, std::move(rows));
}

inline JointRange with_step(const JointLimits& l, double step) { return {l.lo, l.hi, step}; }

inline void append_finger_ranges(std::vector<JointRange>& out, const FingerLimits& f, int flexion, double step) {
    out.push_back(with_step(f.abduction, step));
    out.push_back(with_step(f.proximal, step));
    out.push_back(with_step(f.middle, step));
    if (flexion == 3) out.push_back(with_step(f.distal, step));
}

}  // namespace detail

/// Chains in the order thumb, index, middle, ring, little.
inline std::vector<KinematicChain> build_hand(const CaseSpec& c, const HandParams& p) {
    validate(c);
    validate(p);
    const double aw = p.finger_spacing;
    std::vector<KinematicChain> hand;
    hand.reserve(5);
    hand.push_back(detail::thumb_chain(p));
    hand.push_back(detail::plain_finger(Digit::index, p, 0.0, 3));
    hand.push_back(detail::plain_finger(Digit::middle, p, aw, 3));

    if (c.ring_side_palm) {
        hand.push_back(detail::palm_finger(Digit::ring, p, {1.5 * aw}, 0.5 * aw, c.ring_flexion));
    } else {
        hand.push_back(detail::plain_finger(Digit::ring, p, 2.0 * aw, c.ring_flexion));
    }

    if (c.ring_side_palm && c.little_side_palm) {
        hand.push_back(detail::palm_finger(Digit::little, p, {1.5 * aw, aw}, 0.5 * aw, c.little_flexion));
    } else if (c.ring_side_palm) {
        hand.push_back(detail::palm_finger(Digit::little, p, {1.5 * aw}, 1.5 * aw, c.little_flexion));
    } else if (c.little_side_palm) {
        hand.push_back(detail::palm_finger(Digit::little, p, {2.5 * aw}, 0.5 * aw, c.little_flexion));
    } else {
        hand.push_back(detail::plain_finger(Digit::little, p, 3.0 * aw, c.little_flexion));
    }
    return hand;
}

inline const KinematicChain& chain_for(const std::vector<KinematicChain>& hand, Digit d) {
    return hand.at(static_cast<std::size_t>(d));
}

/// Joint grid matching the joint numbering of build_hand's chain for `digit`.
inline JointGrid digit_grid(const CaseSpec& c, Digit digit, double step) {
    validate(c);
    std::vector<JointRange> ranges;
    std::optional<SumConstraint> constraint;
    switch (digit) {
        case Digit::thumb:
            for (const auto& l : c.thumb) ranges.push_back(detail::with_step(l, step));
            break;
        case Digit::index:
        case Digit::middle: detail::append_finger_ranges(ranges, c.finger, 3, step); break;
        case Digit::ring:
            if (c.ring_side_palm) ranges.push_back(detail::with_step(c.ring_side_limits, step));
            detail::append_finger_ranges(ranges, c.finger, c.ring_flexion, step);
            break;
        case Digit::little:
            if (c.ring_side_palm) ranges.push_back(detail::with_step(c.ring_side_limits, step));
            if (c.little_side_palm) ranges.push_back(detail::with_step(c.little_side_limits, step));
            if (c.coupled()) constraint = SumConstraint{0, 1, c.coupling_bound};
            detail::append_finger_ranges(ranges, c.finger, c.little_flexion, step);
            break;
    }
    return JointGrid(std::move(ranges), constraint);
}

}  // namespace palmkin
