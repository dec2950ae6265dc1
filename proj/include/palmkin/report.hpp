#pragma once

/**
 * @file report.hpp
 * @brief Full-case runs, the resolution study and reference comparisons.
 */

#include "palmkin/cases.hpp"
#include "palmkin/error.hpp"
#include "palmkin/hand.hpp"
#include "palmkin/kinematics.hpp"
#include "palmkin/overlap.hpp"
#include "palmkin/params.hpp"
#include "palmkin/sampling.hpp"
#include "palmkin/voxelize.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace palmkin {

inline constexpr double kDefaultDelta = 0.05;
inline constexpr double kDefaultStep = std::numbers::pi / 60.0;

struct RunOptions {
    double delta = kDefaultDelta;
    double step = kDefaultStep;
    unsigned threads = 1;
};

struct DigitReport {
    Digit digit = Digit::thumb;
    std::vector<std::size_t> axis_counts;
    std::uint64_t samples = 0;
    std::size_t voxels = 0;
    double volume = 0.0;
    std::optional<double> volume_change_pct;  // vs. Case 1
};

struct PairReport {
    Digit finger = Digit::index;
    std::size_t voxels = 0;
    double volume = 0.0;
    std::optional<double> ratio_own_pct;       // vs. this case's reachable volume
    std::optional<double> ratio_baseline_pct;  // vs. Case-1 reachable volume
    std::optional<double> change_pct;          // overlap volume vs. Case 1
    std::optional<VwrcStats> thumb_vwrc;
    std::optional<VwrcStats> finger_vwrc;
};

struct CaseReport {
    CaseSpec spec;
    double delta = kDefaultDelta;
    double step = kDefaultStep;
    std::array<DigitReport, 5> digits{};
    std::array<PairReport, 4> pairs{};  // index, middle, ring, little
    double seconds = 0.0;               // wall clock; not serialized

    const DigitReport& digit(Digit d) const { return digits[static_cast<std::size_t>(d)]; }
    const PairReport& pair(Digit finger) const {
        if (finger == Digit::thumb) throw ConfigurationError("thumb has no thumb overlap");
        return pairs[static_cast<std::size_t>(finger) - 1];
    }
};

/// 100 * (value - baseline) / baseline, or nullopt for a zero baseline.
inline std::optional<double> percent_change(double value, double baseline) {
    if (baseline == 0.0) return std::nullopt;
    return 100.0 * (value - baseline) / baseline;
}

/**
 * Runs cases on one hand geometry and one resolution. Workspaces are cached by
 * chain geometry and grid, so digits shared between cases (thumb, index,
 * middle, unchanged ring/little chains) are computed once.
 */
class Analyzer {
public:
    explicit Analyzer(HandParams params = normalized_params(), RunOptions opts = {})
        : params_(std::move(params)), opts_(opts) {
        validate(params_);
        check_delta(opts_.delta);
        if (!(opts_.step > 0.0)) throw ParameterError("joint step must be positive");
    }

    const HandParams& params() const { return params_; }
    const RunOptions& options() const { return opts_; }

    /// Voxel set for one digit of one case (cached).
    const VoxelSet& digit_workspace(const CaseSpec& spec, Digit d) {
        const auto hand = build_hand(spec, params_);
        return cached(chain_for(hand, d), digit_grid(spec, d, opts_.step));
    }

    OverlapResult digit_overlap(const CaseSpec& spec, Digit finger) {
        return overlap(digit_workspace(spec, Digit::thumb), digit_workspace(spec, finger), finger);
    }

    CaseReport run_case(const CaseSpec& spec) {
        const auto start = std::chrono::steady_clock::now();
        const CaseSpec baseline_spec = baseline_for(spec);

        CaseReport rep;
        rep.spec = spec;
        rep.delta = opts_.delta;
        rep.step = opts_.step;

        const auto hand = build_hand(spec, params_);
        const auto base_hand = build_hand(baseline_spec, params_);
        const VoxelSet& thumb = workspace_for(spec, hand, Digit::thumb);
        const VoxelSet& base_thumb = workspace_for(baseline_spec, base_hand, Digit::thumb);

        for (Digit d : kAllDigits) {
            const auto grid = digit_grid(spec, d, opts_.step);
            const VoxelSet& set = cached(chain_for(hand, d), grid);
            const VoxelSet& base = workspace_for(baseline_spec, base_hand, d);
            auto& dr = rep.digits[static_cast<std::size_t>(d)];
            dr.digit = d;
            dr.axis_counts = grid.axis_counts();
            dr.samples = grid.size();
            dr.voxels = set.size();
            dr.volume = volume(set);
            dr.volume_change_pct = percent_change(dr.volume, volume(base));
        }

        for (Digit f : kFingers) {
            const VoxelSet& fset = workspace_for(spec, hand, f);
            const auto ov = overlap(thumb, fset, f);
            const auto base_ov = overlap(base_thumb, workspace_for(baseline_spec, base_hand, f), f);
            const double reach = volume(fset);
            const double base_reach = volume(workspace_for(baseline_spec, base_hand, f));

            auto& pr = rep.pairs[static_cast<std::size_t>(f) - 1];
            pr.finger = f;
            pr.voxels = ov.keys.size();
            pr.volume = ov.volume();
            if (reach > 0.0) pr.ratio_own_pct = overlap_ratio(pr.volume, reach);
            if (base_reach > 0.0) pr.ratio_baseline_pct = overlap_ratio(pr.volume, base_reach);
            pr.change_pct = percent_change(pr.volume, base_ov.volume());
            pr.thumb_vwrc = vwrc(ov.thumb_counts);
            pr.finger_vwrc = vwrc(ov.finger_counts);
        }
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    }

    CaseReport run_case(int id) { return run_case(case_spec(id)); }

private:
    // Case 1 with this case's joint limits, used for percent changes.
    static CaseSpec baseline_for(const CaseSpec& spec) {
        CaseSpec b = spec;
        b.id = 1;
        b.ring_side_palm = b.little_side_palm = false;
        b.ring_flexion = b.little_flexion = 3;
        return b;
    }

    const VoxelSet& workspace_for(const CaseSpec& spec, const std::vector<KinematicChain>& hand, Digit d) {
        return cached(chain_for(hand, d), digit_grid(spec, d, opts_.step));
    }

    static std::string signature(const KinematicChain& chain, const JointGrid& grid) {
        std::ostringstream os;
        os.precision(17);
        os << static_cast<int>(chain.label()) << '|';
        for (int i = 0; i < 3; ++i) os << chain.base().translation[i] << ',';
        for (int i = 0; i < 9; ++i) os << chain.base().rotation(i / 3, i % 3) << ',';
        for (const auto& r : chain.rows()) {
            os << '[' << r.alpha_prev << ',' << r.a_prev << ',' << r.d << ',';
            if (const auto* f = std::get_if<FixedTheta>(&r.theta)) {
                os << 'F' << f->angle;
            } else {
                const auto& v = std::get<VariableTheta>(r.theta);
                os << 'V' << v.joint << ':' << v.offset;
            }
            os << ']';
        }
        os << '|';
        for (const auto& r : grid.ranges()) os << r.lo << ':' << r.hi << ':' << r.step << ';';
        if (const auto& c = grid.constraint()) os << "c" << c->first << ',' << c->second << ',' << c->bound;
        return os.str();
    }

    const VoxelSet& cached(const KinematicChain& chain, const JointGrid& grid) {
        const auto key = signature(chain, grid);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            auto set = std::make_unique<VoxelSet>(workspace(chain, grid, opts_.delta, {opts_.threads}));
            it = cache_.emplace(key, std::move(set)).first;
        }
        return *it->second;
    }

    HandParams params_;
    RunOptions opts_;
    std::map<std::string, std::unique_ptr<VoxelSet>> cache_;
};

inline CaseReport run_case(int id, double delta = kDefaultDelta, double step = kDefaultStep,
                           const HandParams& params = normalized_params(), unsigned threads = 1) {
    Analyzer a(params, {delta, step, threads});
    return a.run_case(id);
}

// ---------------------------------------------------------------------------
// Resolution study

struct ConvergenceEntry {
    Digit digit = Digit::thumb;
    double delta = 0.0;
    double step = 0.0;
    std::size_t voxels = 0;
    double volume = 0.0;
    std::optional<double> change_pct;  // vs. the previous (coarser) step, same digit and delta
};

struct ConvergenceFlag {
    Digit digit = Digit::thumb;
    double delta = 0.0;
    std::optional<double> step;  // coarsest step whose refinement changes volume < threshold
};

struct ConvergenceStudy {
    int case_id = 7;
    double threshold_pct = 3.0;
    std::vector<ConvergenceEntry> entries;
    std::vector<ConvergenceFlag> flags;
};

/**
 * Volumes for every (digit, delta, step) combination. Steps are taken in the
 * order given, which should run from coarse to fine.
 */
inline ConvergenceStudy convergence_study(const std::vector<double>& deltas, const std::vector<double>& steps,
                                          const std::vector<Digit>& digits = {Digit::thumb, Digit::index,
                                                                              Digit::little},
                                          const CaseSpec& spec = case_spec(7),
                                          const HandParams& params = normalized_params(), unsigned threads = 1,
                                          double threshold_pct = 3.0) {
    if (deltas.empty() || steps.empty()) throw ConfigurationError("convergence study needs deltas and steps");
    ConvergenceStudy study;
    study.case_id = spec.id;
    study.threshold_pct = threshold_pct;
    const auto hand = build_hand(spec, params);
    for (Digit d : digits) {
        for (double delta : deltas) {
            ConvergenceFlag flag{d, delta, std::nullopt};
            std::optional<double> prev;
            for (std::size_t i = 0; i < steps.size(); ++i) {
                const auto set = workspace(chain_for(hand, d), digit_grid(spec, d, steps[i]), delta, {threads});
                ConvergenceEntry e{d, delta, steps[i], set.size(), volume(set), std::nullopt};
                if (prev) {
                    e.change_pct = percent_change(e.volume, *prev);
                    if (!flag.step && e.change_pct && std::abs(*e.change_pct) < threshold_pct) {
                        flag.step = steps[i - 1];
                    }
                }
                prev = e.volume;
                study.entries.push_back(e);
            }
            study.flags.push_back(flag);
        }
    }
    return study;
}

// ---------------------------------------------------------------------------
// Reference comparison

/// Metrics a CaseReport exposes by name.
inline const std::vector<std::string>& known_metrics() {
    static const std::vector<std::string> names{
        "reachable_volume",   "overlap_volume",     "overlap_ratio_own_pct", "overlap_ratio_baseline_pct",
        "overlap_change_pct", "thumb_vwrc_mean",    "thumb_vwrc_p10",        "finger_vwrc_mean",
        "finger_vwrc_p10",    "reachable_change_pct"};
    return names;
}

inline std::optional<double> metric_value(const CaseReport& r, Digit d, const std::string& metric) {
    if (metric == "reachable_volume") return r.digit(d).volume;
    if (metric == "reachable_change_pct") return r.digit(d).volume_change_pct;
    if (d == Digit::thumb) throw ConfigurationError("metric '" + metric + "' is not defined for the thumb");
    const auto& p = r.pair(d);
    if (metric == "overlap_volume") return p.volume;
    if (metric == "overlap_ratio_own_pct") return p.ratio_own_pct;
    if (metric == "overlap_ratio_baseline_pct") return p.ratio_baseline_pct;
    if (metric == "overlap_change_pct") return p.change_pct;
    const auto stat = [](const std::optional<VwrcStats>& s, bool mean) -> std::optional<double> {
        if (!s) return std::nullopt;
        return mean ? s->mean : s->p10;
    };
    if (metric == "thumb_vwrc_mean") return stat(p.thumb_vwrc, true);
    if (metric == "thumb_vwrc_p10") return stat(p.thumb_vwrc, false);
    if (metric == "finger_vwrc_mean") return stat(p.finger_vwrc, true);
    if (metric == "finger_vwrc_p10") return stat(p.finger_vwrc, false);
    throw ConfigurationError("unknown metric '" + metric + "'");
}

struct ReferenceEntry {
    int case_id = 1;
    Digit digit = Digit::thumb;
    std::string metric;
    double expected = 0.0;
    double tolerance = 0.05;  // relative
    double delta = kDefaultDelta;
    double step = kDefaultStep;
    std::string source;
};

struct ReferenceTable {
    std::vector<ReferenceEntry> entries;
};

struct ComparisonRow {
    ReferenceEntry ref;
    std::optional<double> actual;
    std::optional<double> relative_error;
    bool pass = false;
};

inline bool same_resolution(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

inline ComparisonRow compare_entry(const ReferenceEntry& e, std::optional<double> actual) {
    ComparisonRow row{e, actual, std::nullopt, false};
    if (actual) {
        row.relative_error = e.expected == 0.0 ? std::abs(*actual) : std::abs(*actual - e.expected) / std::abs(e.expected);
        row.pass = *row.relative_error <= e.tolerance;
    }
    return row;
}

/**
 * One row per reference entry that targets this report's case and resolution.
 * Entries naming metrics the report cannot produce raise ConfigurationError.
 */
inline std::vector<ComparisonRow> compare(const CaseReport& report, const ReferenceTable& ref) {
    std::vector<ComparisonRow> rows;
    for (const auto& e : ref.entries) {
        if (e.case_id != report.spec.id || !same_resolution(e.delta, report.delta) ||
            !same_resolution(e.step, report.step)) {
            continue;
        }
        rows.push_back(compare_entry(e, metric_value(report, e.digit, e.metric)));
    }
    return rows;
}

inline bool all_pass(const std::vector<ComparisonRow>& rows) {
    for (const auto& r : rows) {
        if (!r.pass) return false;
    }
    return true;
}

}  // namespace palmkin
