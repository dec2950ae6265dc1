#pragma once

/**
 * @file kinematics.hpp
 * @brief Modified (Craig) DH rows, kinematic chains and fingertip forward kinematics.
 *
 * Every row maps frame i-1 to frame i as
 *   T = Rot_x(alpha_{i-1}) * Trans_x(a_{i-1}) * Rot_z(theta_i) * Trans_z(d_i)
 * Lengths are normalized by the hand length (HL = 1).
 */

#include "palmkin/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace palmkin {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// The five digits of the hand, in the order chains are returned.
enum class Digit { thumb, index, middle, ring, little };

inline constexpr Digit kAllDigits[] = {Digit::thumb, Digit::index, Digit::middle, Digit::ring,
                                       Digit::little};
inline constexpr Digit kFingers[] = {Digit::index, Digit::middle, Digit::ring, Digit::little};

inline std::string_view to_string(Digit d) {
    switch (d) {
        case Digit::thumb: return "thumb";
        case Digit::index: return "index";
        case Digit::middle: return "middle";
        case Digit::ring: return "ring";
        case Digit::little: return "little";
    }
    return "?";
}

inline Digit digit_from_string(std::string_view s) {
    for (Digit d : kAllDigits) {
        if (to_string(d) == s) return d;
    }
    throw ConfigurationError("unknown digit '" + std::string(s) + "'");
}

/// Rigid transform: rotation block plus translation.
struct Transform {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    static Transform identity() { return {}; }

    static Transform translation_only(const Vec3& t) {
        Transform out;
        out.translation = t;
        return out;
    }

    Transform operator*(const Transform& rhs) const {
        Transform out;
        out.rotation.noalias() = rotation * rhs.rotation;
        out.translation.noalias() = rotation * rhs.translation;
        out.translation += translation;
        return out;
    }

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

/// theta held constant (including tool-tip rows).
struct FixedTheta {
    double angle = 0.0;
};

/// theta = q[joint] + offset.
struct VariableTheta {
    std::size_t joint = 0;
    double offset = 0.0;
};

using Theta = std::variant<FixedTheta, VariableTheta>;

struct DhRow {
    double alpha_prev = 0.0;
    double a_prev = 0.0;
    double d = 0.0;
    Theta theta = FixedTheta{};

    bool is_variable() const { return std::holds_alternative<VariableTheta>(theta); }

    friend bool operator==(const DhRow& l, const DhRow& r) {
        if (l.alpha_prev != r.alpha_prev || l.a_prev != r.a_prev || l.d != r.d) return false;
        if (l.theta.index() != r.theta.index()) return false;
        if (const auto* f = std::get_if<FixedTheta>(&l.theta)) {
            return f->angle == std::get<FixedTheta>(r.theta).angle;
        }
        const auto& lv = std::get<VariableTheta>(l.theta);
        const auto& rv = std::get<VariableTheta>(r.theta);
        return lv.joint == rv.joint && lv.offset == rv.offset;
    }
};

/// Row transform for an already-resolved joint angle.
inline Transform dh_transform(const DhRow& row, double theta) {
    const double ca = std::cos(row.alpha_prev);
    const double sa = std::sin(row.alpha_prev);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);

    Transform t;
    // clang-format off
    t.rotation << ct,      -st,      0.0,
                  st * ca,  ct * ca, -sa,
                  st * sa,  ct * sa,  ca;
    // clang-format on
    t.translation << row.a_prev, -sa * row.d, ca * row.d;
    return t;
}

inline double effective_theta(const DhRow& row, std::span<const double> q) {
    if (const auto* f = std::get_if<FixedTheta>(&row.theta)) return f->angle;
    const auto& v = std::get<VariableTheta>(row.theta);
    if (v.joint >= q.size()) {
        throw IndexError("joint index " + std::to_string(v.joint) + " out of range for " +
                         std::to_string(q.size()) + " joint values");
    }
    return q[v.joint] + v.offset;
}

inline Transform dh_transform(const DhRow& row, std::span<const double> q) {
    return dh_transform(row, effective_theta(row, q));
}

/**
 * Ordered list of DH rows for one digit. An optional fixed base transform maps
 * the chain's frame 0 into the hand frame P_o.
 *
 * Invariants checked on construction: all lengths finite and non-negative,
 * variable joints numbered 0..dof-1 each exactly once, last row is a fixed
 * zero-theta tool-tip row.
 */
class KinematicChain {
public:
    KinematicChain(Digit label, std::vector<DhRow> rows, Transform base = Transform::identity())
        : label_(label), rows_(std::move(rows)), base_(std::move(base)) {
        validate();
    }

    Digit label() const { return label_; }
    const std::vector<DhRow>& rows() const { return rows_; }
    const Transform& base() const { return base_; }
    std::size_t dof() const { return dof_; }

    /// Upper bound on the distance from the base origin to any tip position.
    double reach_bound() const {
        double r = 0.0;
        for (const auto& row : rows_) r += std::abs(row.a_prev) + std::abs(row.d);
        return r;
    }

    friend bool operator==(const KinematicChain& l, const KinematicChain& r) {
        return l.label_ == r.label_ && l.rows_ == r.rows_ && l.base_.rotation == r.base_.rotation &&
               l.base_.translation == r.base_.translation;
    }

private:
    void validate() {
        if (rows_.empty()) throw ConfigurationError("kinematic chain has no rows");
        std::vector<int> seen;
        for (const auto& row : rows_) {
            if (!std::isfinite(row.alpha_prev) || !std::isfinite(row.a_prev) || !std::isfinite(row.d)) {
                throw ParameterError("non-finite DH parameter");
            }
            if (row.a_prev < 0.0 || row.d < 0.0) throw ParameterError("negative DH length");
            if (const auto* v = std::get_if<VariableTheta>(&row.theta)) {
                if (v->joint >= seen.size()) seen.resize(v->joint + 1, 0);
                ++seen[v->joint];
                ++dof_;
            }
        }
        for (std::size_t j = 0; j < seen.size(); ++j) {
            if (seen[j] != 1) {
                throw ConfigurationError("joint " + std::to_string(j) +
                                         " must be referenced by exactly one row");
            }
        }
        const auto& tip = rows_.back();
        const auto* f = std::get_if<FixedTheta>(&tip.theta);
        if (f == nullptr || f->angle != 0.0) {
            throw ConfigurationError("last row must be a fixed zero-theta tool-tip row");
        }
    }

    Digit label_;
    std::vector<DhRow> rows_;
    Transform base_;
    std::size_t dof_ = 0;
};

/// Base-to-tip transform, composed left to right.
inline Transform chain_transform(const KinematicChain& chain, std::span<const double> q) {
    if (q.size() != chain.dof()) {
        throw DimensionError("chain " + std::string(to_string(chain.label())) + " expects " +
                             std::to_string(chain.dof()) + " joint values, got " +
                             std::to_string(q.size()));
    }
    Transform t = chain.base();
    for (const auto& row : chain.rows()) t = t * dh_transform(row, q);
    return t;
}

/// Fingertip position in P_o.
inline Vec3 chain_fk(const KinematicChain& chain, std::span<const double> q) {
    return chain_transform(chain, q).translation;
}

inline Vec3 chain_fk(const KinematicChain& chain, std::initializer_list<double> q) {
    return chain_fk(chain, std::span<const double>(q.begin(), q.size()));
}

}  // namespace palmkin
