#pragma once

// Uniform joint-space grids with an optional pairwise sum constraint.

#include "palmkin/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace palmkin {

struct JointRange {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    friend bool operator==(const JointRange&, const JointRange&) = default;
};

inline void validate(const JointRange& r) {
    if (!(r.step > 0.0) || !std::isfinite(r.step)) {
        throw ParameterError("joint range step must be positive, got " + std::to_string(r.step));
    }
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
        throw ParameterError("joint range requires finite lo <= hi");
    }
}

/// N = round(span/step) + 1 uniformly spaced values, both endpoints exact.
inline std::vector<double> sample_axis(const JointRange& r) {
    validate(r);
    const auto intervals = static_cast<std::size_t>(std::llround((r.hi - r.lo) / r.step));
    if (intervals == 0) return {r.lo};
    std::vector<double> out(intervals + 1);
    const double spacing = (r.hi - r.lo) / static_cast<double>(intervals);
    for (std::size_t i = 0; i < intervals; ++i) out[i] = r.lo + spacing * static_cast<double>(i);
    out.back() = r.hi;
    return out;
}

/// q[first] + q[second] <= bound (+ tolerance).
struct SumConstraint {
    std::size_t first = 0;
    std::size_t second = 0;
    double bound = 0.0;

    static constexpr double kTolerance = 1e-12;

    bool admits(double a, double b) const { return a + b <= bound + kTolerance; }

    friend bool operator==(const SumConstraint&, const SumConstraint&) = default;
};

/**
 * Cartesian product of per-joint sample lists, minus tuples rejected by the
 * constraint. Enumeration is lexicographic with the last joint varying fastest.
 * Any sub-range [begin, end) of raw Cartesian indices can be enumerated on its
 * own, so disjoint sub-ranges can be handed to separate workers.
 */
class JointGrid {
public:
    explicit JointGrid(std::vector<JointRange> ranges,
                       std::optional<SumConstraint> constraint = std::nullopt)
        : ranges_(std::move(ranges)), constraint_(constraint) {
        axes_.reserve(ranges_.size());
        for (const auto& r : ranges_) axes_.push_back(sample_axis(r));
        if (constraint_) {
            if (constraint_->first >= ranges_.size() || constraint_->second >= ranges_.size() ||
                constraint_->first == constraint_->second) {
                throw ConfigurationError("sum constraint references invalid joints");
            }
        }
    }

    std::size_t dof() const { return ranges_.size(); }
    const std::vector<JointRange>& ranges() const { return ranges_; }
    const std::optional<SumConstraint>& constraint() const { return constraint_; }
    const std::vector<std::vector<double>>& axes() const { return axes_; }

    std::vector<std::size_t> axis_counts() const {
        std::vector<std::size_t> out;
        for (const auto& a : axes_) out.push_back(a.size());
        return out;
    }

    /// Size of the unconstrained Cartesian product (the raw index space).
    std::uint64_t cartesian_size() const {
        std::uint64_t n = 1;
        for (const auto& a : axes_) n *= a.size();
        return n;
    }

    /// Number of emitted tuples, computed from the constrained pair only.
    std::uint64_t size() const {
        if (!constraint_) return cartesian_size();
        const auto& c = *constraint_;
        std::uint64_t admitted = 0;
        for (double a : axes_[c.first]) {
            for (double b : axes_[c.second]) admitted += c.admits(a, b) ? 1 : 0;
        }
        const std::uint64_t pair = axes_[c.first].size() * axes_[c.second].size();
        return cartesian_size() / pair * admitted;
    }

    bool admits(std::span<const double> q) const {
        return !constraint_ || constraint_->admits(q[constraint_->first], q[constraint_->second]);
    }

    /**
     * Calls visit(q, changed) for every admitted tuple whose raw index lies in
     * [begin, end). `changed` is the lowest joint index whose value differs from
     * the previous visited tuple (0 on the first call), which lets callers keep
     * prefix products.
     */
    template <class Visitor>
    void for_each(std::uint64_t begin, std::uint64_t end, Visitor&& visit) const {
        for_each_indexed(begin, end,
                         [&](std::span<const std::size_t>, std::span<const double> q, std::size_t changed) {
                             visit(q, changed);
                         });
    }

    /// As for_each, additionally passing the per-axis sample indices.
    template <class Visitor>
    void for_each_indexed(std::uint64_t begin, std::uint64_t end, Visitor&& visit) const {
        end = std::min(end, cartesian_size());
        if (begin >= end) return;
        const std::size_t n = axes_.size();
        std::vector<std::size_t> digit(n);
        std::vector<double> q(n);
        std::uint64_t rem = begin;
        for (std::size_t k = n; k-- > 0;) {
            digit[k] = static_cast<std::size_t>(rem % axes_[k].size());
            rem /= axes_[k].size();
        }
        for (std::size_t k = 0; k < n; ++k) q[k] = axes_[k][digit[k]];

        std::size_t changed = 0;
        for (std::uint64_t idx = begin;;) {
            if (admits(q)) {
                visit(std::span<const std::size_t>(digit), std::span<const double>(q), changed);
                changed = n;
            }
            if (++idx == end) break;
            std::size_t k = n;
            while (k-- > 0) {
                if (++digit[k] < axes_[k].size()) break;
                digit[k] = 0;
                q[k] = axes_[k][0];
            }
            q[k] = axes_[k][digit[k]];
            changed = std::min(changed, k);
        }
    }

    template <class Visitor>
    void for_each(Visitor&& visit) const {
        for_each(0, cartesian_size(), std::forward<Visitor>(visit));
    }

    /// Materialized samples; intended for small grids and tests.
    std::vector<std::vector<double>> samples() const {
        std::vector<std::vector<double>> out;
        for_each([&](std::span<const double> q, std::size_t) { out.emplace_back(q.begin(), q.end()); });
        return out;
    }

private:
    std::vector<JointRange> ranges_;
    std::optional<SumConstraint> constraint_;
    std::vector<std::vector<double>> axes_;
};

}  // namespace palmkin
