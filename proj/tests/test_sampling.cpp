#include "palmkin/hand.hpp"
#include "palmkin/sampling.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <set>

using namespace palmkin;
constexpr double pi = std::numbers::pi;

TEST(SampleAxis, QuarterTurnAtPiOver60) {
    const auto v = sample_axis({0, pi / 2, pi / 60});
    ASSERT_EQ(v.size(), 31u);
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_EQ(v.back(), pi / 2);
}

TEST(SampleAxis, DegenerateRange) {
    EXPECT_EQ(sample_axis({0, 0, pi / 60}), std::vector<double>{0.0});
}

TEST(SampleAxis, SymmetricAbductionRangeContainsZero) {
    const auto v = sample_axis({-pi / 12, pi / 12, pi / 60});
    ASSERT_EQ(v.size(), 11u);
    EXPECT_NEAR(v[5], 0.0, 1e-15);
}

TEST(SampleAxis, UnevenSpanKeepsEndpoints) {
    // 11*pi/18 is not a multiple of pi/60; spacing is stretched to hit hi exactly.
    const JointRange r{-pi / 2, pi / 9, pi / 60};
    const auto v = sample_axis(r);
    EXPECT_EQ(v.size(), static_cast<std::size_t>(std::llround((r.hi - r.lo) / r.step)) + 1);
    EXPECT_EQ(v.front(), r.lo);
    EXPECT_EQ(v.back(), r.hi);
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GT(v[i], v[i - 1]);
}

TEST(SampleAxis, RejectsBadRanges) {
    EXPECT_THROW(sample_axis({0, 1, 0}), ParameterError);
    EXPECT_THROW(sample_axis({0, 1, -0.1}), ParameterError);
    EXPECT_THROW(sample_axis({1, 0, 0.1}), ParameterError);
    EXPECT_THROW(sample_axis({0, std::numeric_limits<double>::infinity(), 0.1}), ParameterError);
}

TEST(JointGrid, CartesianProduct) {
    const JointGrid g({{0, 1, 0.5}, {0, 2, 1}});
    const auto s = g.samples();
    ASSERT_EQ(s.size(), 9u);
    EXPECT_EQ(g.size(), 9u);
    EXPECT_EQ(s.front(), (std::vector<double>{0, 0}));
    EXPECT_EQ(s[1], (std::vector<double>{0, 1}));
    EXPECT_EQ(s.back(), (std::vector<double>{1, 2}));
}

TEST(JointGrid, PalmCouplingRejectsOnlyViolators) {
    const SumConstraint c{0, 1, 11 * pi / 45};
    const JointGrid g({{0, pi / 9, pi / 60}, {0, pi / 6, pi / 60}}, c);
    EXPECT_FALSE(c.admits(pi / 9, pi / 6));
    const auto emitted = g.samples();
    std::set<std::vector<double>> seen(emitted.begin(), emitted.end());
    std::size_t admitted = 0;
    for (double a : sample_axis(g.ranges()[0])) {
        for (double b : sample_axis(g.ranges()[1])) {
            const bool ok = a + b <= 11 * pi / 45 + 1e-12;
            admitted += ok;
            EXPECT_EQ(seen.count({a, b}), ok ? 1u : 0u) << a << ' ' << b;
        }
    }
    EXPECT_EQ(emitted.size(), admitted);
    EXPECT_EQ(g.size(), admitted);
    EXPECT_LT(admitted, g.cartesian_size());
    EXPECT_EQ(seen.count({pi / 9, pi / 6}), 0u);
}

TEST(JointGrid, ConstrainedSizeMatchesEnumeration) {
    const auto spec = case_spec(4);
    const auto g = digit_grid(spec, Digit::little, pi / 12);
    std::uint64_t n = 0;
    g.for_each([&](std::span<const double> q, std::size_t) {
        EXPECT_TRUE(q[0] + q[1] <= spec.coupling_bound + 1e-12);
        ++n;
    });
    EXPECT_EQ(n, g.size());
}

TEST(JointGrid, ThumbGridCount) {
    const auto g = digit_grid(case_spec(1), Digit::thumb, pi / 60);
    EXPECT_EQ(g.axis_counts(), (std::vector<std::size_t>{31, 31, 21, 31, 31}));
    EXPECT_EQ(g.size(), 19'393'941u);
}

TEST(JointGrid, FingerGridCounts) {
    const auto spec = case_spec(1);
    const auto g = digit_grid(spec, Digit::index, pi / 60);
    EXPECT_EQ(g.axis_counts(), (std::vector<std::size_t>{11, 38, 31, 31}));
    EXPECT_EQ(g.size(), 11u * 38 * 31 * 31);
    const auto two = digit_grid(case_spec(7), Digit::ring, pi / 60);
    EXPECT_EQ(two.axis_counts(), (std::vector<std::size_t>{8, 11, 38, 31}));
}

TEST(JointGrid, SubRangesPartitionTheStream) {
    const JointGrid g({{0, 1, 0.25}, {0, 1, 0.5}, {-1, 1, 1}}, SumConstraint{0, 1, 1.0});
    const auto all = g.samples();
    std::vector<std::vector<double>> pieces;
    const std::uint64_t n = g.cartesian_size();
    for (std::uint64_t b = 0; b < n; b += 7) {
        g.for_each(b, std::min(n, b + 7), [&](std::span<const double> q, std::size_t) { pieces.emplace_back(q.begin(), q.end()); });
    }
    EXPECT_EQ(pieces, all);
}

TEST(JointGrid, ChangedIndexIsLowestDifferingJoint) {
    const JointGrid g({{0, 1, 0.5}, {0, 1, 1}, {0, 2, 1}}, SumConstraint{0, 2, 2.0});
    std::vector<double> prev;
    g.for_each([&](std::span<const double> q, std::size_t changed) {
        std::vector<double> cur(q.begin(), q.end());
        if (prev.empty()) {
            EXPECT_EQ(changed, 0u);
        } else {
            std::size_t k = 0;
            while (k < cur.size() && cur[k] == prev[k]) ++k;
            EXPECT_LE(changed, k);
            for (std::size_t j = 0; j < changed; ++j) EXPECT_EQ(cur[j], prev[j]);
        }
        prev = cur;
    });
}

TEST(JointGrid, Deterministic) {
    const auto g = digit_grid(case_spec(4), Digit::little, pi / 10);
    EXPECT_EQ(g.samples(), g.samples());
}

TEST(JointGrid, BadConstraint) {
    EXPECT_THROW(JointGrid({{0, 1, 1}}, SumConstraint{0, 0, 1}), ConfigurationError);
    EXPECT_THROW(JointGrid({{0, 1, 1}}, SumConstraint{0, 3, 1}), ConfigurationError);
}
