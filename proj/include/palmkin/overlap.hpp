#pragma once

// Thumb-finger overlap sets and voxel-wise reachable-configuration (VWRC) statistics.

#include "palmkin/error.hpp"
#include "palmkin/kinematics.hpp"
#include "palmkin/voxelize.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace palmkin {

struct VwrcStats {
    double mean = 0.0;
    double p10 = 0.0;
    std::size_t voxels = 0;
};

/**
 * Intersection of a thumb and a finger voxel set. `keys` are sorted ascending;
 * `thumb_counts[i]` and `finger_counts[i]` are the configuration counts of
 * `keys[i]` in the respective input set.
 */
struct OverlapResult {
    Digit finger = Digit::index;
    double delta = 0.0;
    std::vector<VoxelKey> keys;
    std::vector<std::uint64_t> thumb_counts;
    std::vector<std::uint64_t> finger_counts;

    double volume() const {
        return static_cast<double>(keys.size()) * (delta * delta * delta);
    }

    /// The overlap as a voxel set carrying one side's counts (for export).
    VoxelSet as_voxel_set(bool thumb_side) const {
        VoxelSet out(delta);
        const auto& counts = thumb_side ? thumb_counts : finger_counts;
        for (std::size_t i = 0; i < keys.size(); ++i) out.add(keys[i], counts[i]);
        return out;
    }
};

inline OverlapResult overlap(const VoxelSet& thumb, const VoxelSet& finger, Digit finger_label = Digit::index) {
    if (thumb.delta() != finger.delta()) {
        throw ConfigurationError("overlap requires voxel sets with the same delta");
    }
    OverlapResult out;
    out.finger = finger_label;
    out.delta = thumb.delta();

    const bool thumb_smaller = thumb.size() <= finger.size();
    const VoxelSet& small = thumb_smaller ? thumb : finger;
    const VoxelSet& large = thumb_smaller ? finger : thumb;
    for (const auto& [k, n] : small.counts()) {
        if (large.contains(k)) out.keys.push_back(k);
    }
    std::sort(out.keys.begin(), out.keys.end());
    out.thumb_counts.reserve(out.keys.size());
    out.finger_counts.reserve(out.keys.size());
    for (const auto& k : out.keys) {
        out.thumb_counts.push_back(thumb.count(k));
        out.finger_counts.push_back(finger.count(k));
    }
    return out;
}

/// Mean and nearest-rank 10th percentile; nullopt when there are no voxels.
inline std::optional<VwrcStats> vwrc(std::span<const std::uint64_t> counts) {
    if (counts.empty()) return std::nullopt;
    std::vector<std::uint64_t> sorted(counts.begin(), counts.end());
    std::sort(sorted.begin(), sorted.end());
    const std::uint64_t sum = std::accumulate(sorted.begin(), sorted.end(), std::uint64_t{0});
    // rank = ceil(0.10 * n), 1-based
    const std::size_t rank = (sorted.size() + 9) / 10;
    VwrcStats s;
    s.voxels = sorted.size();
    s.mean = static_cast<double>(sum) / static_cast<double>(sorted.size());
    s.p10 = static_cast<double>(sorted[rank - 1]);
    return s;
}

/// 100 * overlap / reachable.
inline double overlap_ratio(double overlap_volume, double reachable_volume) {
    if (reachable_volume == 0.0) throw DivisionError("overlap ratio with zero reachable volume");
    return 100.0 * overlap_volume / reachable_volume;
}

}  // namespace palmkin
