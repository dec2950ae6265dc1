#pragma once

/**
 * @file voxelize.hpp
 * @brief Fingertip occupancy voxelization with per-voxel configuration counts.
 *
 * A point p maps to key floor(p / delta) componentwise, with the grid anchored
 * at the hand frame origin. Exact multiples of delta belong to the upper cell
 * and negative coordinates floor toward -inf.
 */

#include "palmkin/error.hpp"
#include "palmkin/kinematics.hpp"
#include "palmkin/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

namespace palmkin {

struct VoxelKey {
    std::int32_t x = 0;
    std::int32_t y = 0;
    std::int32_t z = 0;

    friend bool operator==(const VoxelKey&, const VoxelKey&) = default;
    friend auto operator<=>(const VoxelKey&, const VoxelKey&) = default;
};

struct VoxelKeyHash {
    std::size_t operator()(const VoxelKey& k) const noexcept {
        // 21 bits per axis is ample for normalized hand coordinates.
        const auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.x)) & 0x1fffff;
        const auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.y)) & 0x1fffff;
        const auto uz = static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.z)) & 0x1fffff;
        std::uint64_t h = (ux << 42) | (uy << 21) | uz;
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        return static_cast<std::size_t>(h);
    }
};

inline void check_delta(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ParameterError("voxel size must be positive and finite");
    }
}

inline VoxelKey voxel_index(const Vec3& p, double delta) {
    check_delta(delta);
    if (!p.allFinite()) throw InputError("non-finite coordinate passed to voxel_index");
    const auto cell = [delta](double c) {
        const double f = std::floor(c / delta);
        if (f < static_cast<double>(INT32_MIN) || f > static_cast<double>(INT32_MAX)) {
            throw InputError("coordinate outside representable voxel range");
        }
        return static_cast<std::int32_t>(f);
    };
    return {cell(p.x()), cell(p.y()), cell(p.z())};
}

/// Occupied voxels with the number of samples that landed in each.
class VoxelSet {
public:
    using Map = std::unordered_map<VoxelKey, std::uint64_t, VoxelKeyHash>;

    explicit VoxelSet(double delta) : delta_(delta), cell_volume_(delta * delta * delta) {
        check_delta(delta);
    }

    double delta() const { return delta_; }
    double cell_volume() const { return cell_volume_; }
    std::size_t size() const { return counts_.size(); }
    bool empty() const { return counts_.empty(); }
    std::uint64_t total_count() const { return total_; }
    const Map& counts() const { return counts_; }

    bool contains(const VoxelKey& k) const { return counts_.contains(k); }

    std::uint64_t count(const VoxelKey& k) const {
        const auto it = counts_.find(k);
        return it == counts_.end() ? 0 : it->second;
    }

    void accumulate(const Vec3& p) { add(voxel_index(p, delta_), 1); }

    /// Adds `n` (>= 1) configurations to `k`.
    void add(const VoxelKey& k, std::uint64_t n) {
        if (n == 0) return;
        counts_[k] += n;
        total_ += n;
    }

    /// Sums counts per key; associative and commutative.
    void merge(const VoxelSet& other) {
        if (other.delta_ != delta_) throw ConfigurationError("cannot merge voxel sets with different delta");
        for (const auto& [k, n] : other.counts_) add(k, n);
    }

    /// Entries in ascending key order.
    std::vector<std::pair<VoxelKey, std::uint64_t>> sorted() const {
        std::vector<std::pair<VoxelKey, std::uint64_t>> out(counts_.begin(), counts_.end());
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    std::vector<VoxelKey> sorted_keys() const {
        std::vector<VoxelKey> out;
        out.reserve(counts_.size());
        for (const auto& [k, n] : counts_) out.push_back(k);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const VoxelSet& l, const VoxelSet& r) {
        return l.delta_ == r.delta_ && l.total_ == r.total_ && l.counts_ == r.counts_;
    }

private:
    double delta_;
    double cell_volume_;
    std::uint64_t total_ = 0;
    Map counts_;
};

/// |keys| * delta^3; delta^3 is computed once per set.
inline double volume(const VoxelSet& set) {
    return static_cast<double>(set.size()) * set.cell_volume();
}

namespace detail {

// Dense counter over the axis-aligned box that must contain every tip.
class DenseCounter {
public:
    static constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 26;

    DenseCounter(VoxelKey lo, VoxelKey hi) : lo_(lo) {
        nx_ = static_cast<std::uint64_t>(hi.x - lo.x + 1);
        ny_ = static_cast<std::uint64_t>(hi.y - lo.y + 1);
        nz_ = static_cast<std::uint64_t>(hi.z - lo.z + 1);
        cells_.assign(nx_ * ny_ * nz_, 0);
    }

    static bool fits(VoxelKey lo, VoxelKey hi) {
        const auto n = [](std::int32_t a, std::int32_t b) { return static_cast<std::uint64_t>(b - a + 1); };
        const std::uint64_t nx = n(lo.x, hi.x), ny = n(lo.y, hi.y), nz = n(lo.z, hi.z);
        return nx <= kMaxCells && ny <= kMaxCells && nz <= kMaxCells && nx * ny <= kMaxCells &&
               nx * ny * nz <= kMaxCells;
    }

    bool add(const VoxelKey& k) {
        const auto ix = static_cast<std::uint64_t>(k.x - lo_.x);
        const auto iy = static_cast<std::uint64_t>(k.y - lo_.y);
        const auto iz = static_cast<std::uint64_t>(k.z - lo_.z);
        if (ix >= nx_ || iy >= ny_ || iz >= nz_) return false;
        ++cells_[(ix * ny_ + iy) * nz_ + iz];
        return true;
    }

    void drain_into(VoxelSet& set) const {
        for (std::uint64_t ix = 0; ix < nx_; ++ix) {
            for (std::uint64_t iy = 0; iy < ny_; ++iy) {
                for (std::uint64_t iz = 0; iz < nz_; ++iz) {
                    const auto n = cells_[(ix * ny_ + iy) * nz_ + iz];
                    if (n == 0) continue;
                    set.add({lo_.x + static_cast<std::int32_t>(ix), lo_.y + static_cast<std::int32_t>(iy),
                             lo_.z + static_cast<std::int32_t>(iz)},
                            n);
                }
            }
        }
    }

private:
    VoxelKey lo_;
    std::uint64_t nx_ = 0, ny_ = 0, nz_ = 0;
    std::vector<std::uint64_t> cells_;
};

/**
 * Walks grid indices [begin, end) and reports each tip position. Prefix products
 * are cached per row: when joint k changes only rows from the first row that
 * depends on a joint >= k are recomputed. The association order is the same
 * left fold as chain_transform, so positions are bit-identical to chain_fk.
 */
template <class Sink>
void sweep_tips(const KinematicChain& chain, const JointGrid& grid, std::uint64_t begin,
                std::uint64_t end, Sink&& sink) {
    const auto& rows = chain.rows();
    const std::size_t nrows = rows.size();
    const std::size_t dof = chain.dof();

    // first_row[k]: first row index that depends on a joint >= k.
    std::vector<std::size_t> first_row(dof + 1, nrows);
    for (std::size_t r = nrows; r-- > 0;) {
        if (const auto* v = std::get_if<VariableTheta>(&rows[r].theta)) {
            for (std::size_t k = 0; k <= v->joint; ++k) first_row[k] = std::min(first_row[k], r);
        }
    }

    // Joint values only ever take axis sample values, so every row transform
    // can be tabulated up front: table[r][i] for the i-th sample of its joint.
    std::vector<std::vector<Transform>> table(nrows);
    for (std::size_t r = 0; r < nrows; ++r) {
        if (const auto* v = std::get_if<VariableTheta>(&rows[r].theta)) {
            for (double value : grid.axes()[v->joint]) table[r].push_back(dh_transform(rows[r], value + v->offset));
        } else {
            table[r].push_back(dh_transform(rows[r], std::get<FixedTheta>(rows[r].theta).angle));
        }
    }
    std::vector<std::size_t> joint_of(nrows, dof);
    for (std::size_t r = 0; r < nrows; ++r) {
        if (const auto* v = std::get_if<VariableTheta>(&rows[r].theta)) joint_of[r] = v->joint;
    }

    std::vector<Transform> prefix(nrows + 1);
    prefix[0] = chain.base();
    bool primed = false;

    grid.for_each_indexed(begin, end, [&](std::span<const std::size_t> digit, std::span<const double>,
                                          std::size_t changed) {
        const std::size_t from = primed ? first_row[std::min(changed, dof)] : 0;
        primed = true;
        for (std::size_t r = from; r < nrows; ++r) {
            const Transform& step = joint_of[r] < dof ? table[r][digit[joint_of[r]]] : table[r][0];
            prefix[r + 1] = prefix[r] * step;
        }
        sink(prefix[nrows].translation);
    });
}
}  // namespace detail

struct WorkspaceOptions {
    unsigned threads = 1;
};

/**
 * Voxel set of every tip position reachable on `grid`. Workers take disjoint
 * contiguous index ranges and keep private counters; counts are merged by
 * integer addition so the result does not depend on the thread count.
 */
inline VoxelSet workspace(const KinematicChain& chain, const JointGrid& grid, double delta,
                          WorkspaceOptions opts = {}) {
    check_delta(delta);
    if (grid.dof() != chain.dof()) {
        throw ConfigurationError("grid has " + std::to_string(grid.dof()) + " joints but chain " +
                                 std::string(to_string(chain.label())) + " has " +
                                 std::to_string(chain.dof()));
    }

    const double reach = chain.reach_bound();
    const Vec3& origin = chain.base().translation;
    const auto lo = voxel_index(origin - Vec3::Constant(reach + delta), delta);
    const auto hi = voxel_index(origin + Vec3::Constant(reach + delta), delta);
    const bool dense = detail::DenseCounter::fits(lo, hi);

    const std::uint64_t n = grid.cartesian_size();
    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(std::min<std::uint64_t>(n, 1024))));

    auto run = [&](std::uint64_t begin, std::uint64_t end) {
        VoxelSet part(delta);
        if (dense) {
            detail::DenseCounter counter(lo, hi);
            detail::sweep_tips(chain, grid, begin, end, [&](const Vec3& p) {
                if (!counter.add(voxel_index(p, delta))) part.accumulate(p);
            });
            counter.drain_into(part);
        } else {
            detail::sweep_tips(chain, grid, begin, end, [&](const Vec3& p) { part.accumulate(p); });
        }
        return part;
    };

    if (threads == 1) return run(0, n);

    std::vector<VoxelSet> parts(threads, VoxelSet(delta));
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t b = n * t / threads;
            const std::uint64_t e = n * (t + 1) / threads;
            pool.emplace_back([&, t, b, e] {
                try {
                    parts[t] = run(b, e);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    VoxelSet out(delta);
    for (const auto& p : parts) out.merge(p);
    return out;
}

}  // namespace palmkin
