#include "palmkin/report.hpp"
#include "palmkin/report_json.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace palmkin;
constexpr double pi = std::numbers::pi;

namespace {

// Coarse settings keep these tests fast; the acceptance binary runs the defaults.
constexpr double kDelta = 0.1;
constexpr double kStep = pi / 12;

ReferenceEntry entry(double expected, double tol) {
    ReferenceEntry e;
    e.expected = expected;
    e.tolerance = tol;
    return e;
}

}  // namespace

TEST(Compare, ToleranceArithmetic) {
    auto r = compare_entry(entry(0.069875, 0.05), 0.069875);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(*r.relative_error, 0.0);
    r = compare_entry(entry(0.2630, 0.05), 0.2500);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(*r.relative_error, 0.0494, 1e-4);
    r = compare_entry(entry(0.001625, 0.20), 0.002500);
    EXPECT_FALSE(r.pass);
    EXPECT_NEAR(*r.relative_error, 0.538, 1e-3);
    r = compare_entry(entry(1.0, 0.1), std::nullopt);
    EXPECT_FALSE(r.pass);
}

TEST(Compare, PercentChange) {
    EXPECT_NEAR(*percent_change(0.010750, 0.001625), 561.54, 0.01);
    EXPECT_NEAR(*percent_change(0.019000, 0.001625), 1069.23, 0.01);
    EXPECT_NEAR(*percent_change(0.025875, 0.012875), 100.97, 0.01);
    EXPECT_FALSE(percent_change(1.0, 0.0));
}

TEST(Reference, ParsesAndRejectsUnknownKeys) {
    const Json ok{{"entries", {{{"case", 1}, {"digit", "index"}, {"metric", "overlap_volume"}, {"expected", 0.015625},
                                {"tolerance", 0.2}, {"step", "pi/60"}}}}};
    const auto t = reference_from_json(ok);
    ASSERT_EQ(t.entries.size(), 1u);
    EXPECT_DOUBLE_EQ(t.entries[0].step, pi / 60);
    EXPECT_DOUBLE_EQ(t.entries[0].delta, 0.05);

    Json bad = ok;
    bad["entries"][0]["metric"] = "grip_strength";
    EXPECT_THROW(reference_from_json(bad), ConfigurationError);
    bad = ok;
    bad["entries"][0]["digit"] = "wrist";
    EXPECT_THROW(reference_from_json(bad), ConfigurationError);
    bad = ok;
    bad["entries"][0]["case"] = 9;
    EXPECT_THROW(reference_from_json(bad), ConfigurationError);
    bad = ok;
    bad["entries"][0]["digit"] = "thumb";
    EXPECT_THROW(reference_from_json(bad), ConfigurationError);
    bad = ok;
    bad["entries"][0]["step"] = "tau/3";
    EXPECT_THROW(reference_from_json(bad), ConfigurationError);
}

TEST(Reference, ShippedTableLoads) {
    const auto t = load_reference(PALMKIN_SOURCE_DIR "/data/reference.json");
    EXPECT_GE(t.entries.size(), 30u);
    for (const auto& e : t.entries) EXPECT_NO_THROW(case_spec(e.case_id));
}

TEST(Compare, UnknownMetricIsConfigurationError) {
    Analyzer a(normalized_params(), {kDelta, kStep, 1});
    const auto r = a.run_case(1);
    ReferenceTable t;
    ReferenceEntry e = entry(1.0, 0.1);
    e.delta = kDelta;
    e.step = kStep;
    e.metric = "grip_strength";
    e.digit = Digit::index;
    t.entries.push_back(e);
    EXPECT_THROW(compare(r, t), ConfigurationError);
    t.entries[0].metric = "reachable_volume";
    const auto rows = compare(r, t);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(*rows[0].actual, r.digit(Digit::index).volume);
    t.entries[0].step = pi / 60;
    EXPECT_TRUE(compare(r, t).empty());
}

TEST(RunCase, InternalConsistency) {
    Analyzer a(normalized_params(), {kDelta, kStep, 1});
    const auto base = a.run_case(1);
    for (int id = 1; id <= 7; ++id) {
        const auto r = a.run_case(id);
        EXPECT_EQ(r.spec, case_spec(id));
        for (const auto& d : r.digits) {
            EXPECT_DOUBLE_EQ(d.volume, static_cast<double>(d.voxels) * kDelta * kDelta * kDelta);
            std::uint64_t prod = 1;
            for (auto n : d.axis_counts) prod *= n;
            if (!(id == 4 || id == 7) || d.digit != Digit::little) EXPECT_EQ(d.samples, prod);
            EXPECT_EQ(d.volume_change_pct, percent_change(d.volume, base.digit(d.digit).volume));
        }
        for (const auto& p : r.pairs) {
            const auto& b = base.pair(p.finger);
            EXPECT_EQ(p.change_pct, percent_change(p.volume, b.volume));
            if (p.ratio_own_pct) EXPECT_EQ(*p.ratio_own_pct, overlap_ratio(p.volume, r.digit(p.finger).volume));
            if (p.ratio_baseline_pct) {
                EXPECT_EQ(*p.ratio_baseline_pct, overlap_ratio(p.volume, base.digit(p.finger).volume));
            }
            EXPECT_LE(p.volume, std::min(r.digit(Digit::thumb).volume, r.digit(p.finger).volume));
        }
    }
    EXPECT_THROW(base.pair(Digit::thumb), ConfigurationError);
}

TEST(RunCase, CachedAndFreshRunsAgree) {
    Analyzer shared(normalized_params(), {kDelta, kStep, 1});
    shared.run_case(4);
    const auto cached = shared.run_case(7);
    const auto fresh = run_case(7, kDelta, kStep);
    EXPECT_EQ(dump(to_json(cached)), dump(to_json(fresh)));
}

TEST(RunCase, JsonIsByteStable) {
    const auto a = dump(to_json(run_case(4, kDelta, kStep, normalized_params(), 1)));
    const auto b = dump(to_json(run_case(4, kDelta, kStep, normalized_params(), 3)));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("seconds"), std::string::npos);
}

TEST(RunCase, BadOptions) {
    EXPECT_THROW(Analyzer(normalized_params(), {0.0, kStep, 1}), ParameterError);
    EXPECT_THROW(Analyzer(normalized_params(), {kDelta, -1.0, 1}), ParameterError);
    EXPECT_THROW(run_case(0, kDelta, kStep), ConfigurationError);
}

TEST(Convergence, IdenticalStepsGiveZeroChange) {
    const auto s = convergence_study({kDelta}, {pi / 10, pi / 10}, {Digit::index});
    ASSERT_EQ(s.entries.size(), 2u);
    EXPECT_EQ(*s.entries[1].change_pct, 0.0);
    ASSERT_EQ(s.flags.size(), 1u);
    EXPECT_DOUBLE_EQ(*s.flags[0].step, pi / 10);
}

TEST(Convergence, CoversEveryCombination) {
    const auto s = convergence_study({0.1, 0.05}, {pi / 6, pi / 9, pi / 12});
    EXPECT_EQ(s.entries.size(), 3u * 2 * 3);
    EXPECT_EQ(s.flags.size(), 3u * 2);
    EXPECT_THROW(convergence_study({}, {pi / 6}), ConfigurationError);
    const auto j = to_json(s);
    EXPECT_EQ(j["entries"].size(), 18u);
}
