#include "palmkin/cases.hpp"
#include "palmkin/config.hpp"
#include "palmkin/hand.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

using namespace palmkin;
constexpr double pi = std::numbers::pi;

TEST(CaseSpec, Table) {
    const int palm[] = {0, 1, 1, 2, 1, 1, 2};
    const int ring[] = {3, 3, 3, 3, 3, 2, 2};
    const int little[] = {3, 3, 3, 3, 2, 3, 2};
    const int dof[] = {21, 22, 22, 23, 21, 21, 21};
    for (int id = 1; id <= 7; ++id) {
        const auto c = case_spec(id);
        EXPECT_EQ(c.id, id);
        EXPECT_EQ(c.palm_dof(), palm[id - 1]);
        EXPECT_EQ(c.ring_flexion, ring[id - 1]);
        EXPECT_EQ(c.little_flexion, little[id - 1]);
        EXPECT_EQ(c.total_dof(), dof[id - 1]);
        EXPECT_EQ(c.total_dof(), 5 + 4 + 4 + (1 + c.ring_flexion) + (1 + c.little_flexion) + c.palm_dof());
        EXPECT_EQ(c.coupled(), c.palm_dof() == 2);
    }
    EXPECT_TRUE(case_spec(5).little_side_palm);
    EXPECT_FALSE(case_spec(5).ring_side_palm);
    EXPECT_TRUE(case_spec(3).ring_side_palm);
    EXPECT_FALSE(case_spec(3).little_side_palm);
}

TEST(CaseSpec, InvalidId) {
    EXPECT_THROW(case_spec(0), ConfigurationError);
    EXPECT_THROW(case_spec(8), ConfigurationError);
}

TEST(CaseSpec, PalmRanges) {
    const auto c = case_spec(4);
    EXPECT_EQ(c.ring_side_limits.lo, 0.0);
    EXPECT_DOUBLE_EQ(c.ring_side_limits.hi, pi / 9);
    EXPECT_DOUBLE_EQ(c.little_side_limits.hi, pi / 6);
    EXPECT_DOUBLE_EQ(c.coupling_bound, 11 * pi / 45);
    EXPECT_GT(c.ring_side_limits.hi + c.little_side_limits.hi, c.coupling_bound);
}

TEST(CaseSpec, SinglePalmJointIsUncoupled) {
    for (int id : {2, 3, 5, 6}) EXPECT_FALSE(digit_grid(case_spec(id), Digit::little, pi / 60).constraint());
    EXPECT_TRUE(digit_grid(case_spec(4), Digit::little, pi / 60).constraint());
    EXPECT_FALSE(digit_grid(case_spec(4), Digit::ring, pi / 60).constraint());
}

// The finger suffix ranges are the same list with or without a palm prefix.
TEST(CaseSpec, FingerRangesIndependentOfPalm) {
    const auto plain = digit_grid(case_spec(1), Digit::little, pi / 60).ranges();
    for (int id : {2, 3, 4}) {
        const auto g = digit_grid(case_spec(id), Digit::little, pi / 60);
        const auto& r = g.ranges();
        const std::size_t palm = case_spec(id).palm_dof();
        ASSERT_EQ(r.size(), plain.size() + palm);
        EXPECT_TRUE(std::equal(plain.begin(), plain.end(), r.begin() + static_cast<long>(palm)));
    }
}

TEST(HandParams, Defaults) {
    const auto p = normalized_params();
    EXPECT_DOUBLE_EQ(p.finger_spacing, 0.54 / 3);
    EXPECT_NEAR(p.palm_depth + p.three_flexion_links[0] + p.three_flexion_links[1] + p.three_flexion_links[2], 1.0, 1e-12);
    EXPECT_NEAR(p.thumb_offset + p.thumb_links[0] + p.thumb_links[1] + p.thumb_links[2], 0.70, 1e-12);
    EXPECT_NEAR(p.two_flexion_links[0], 0.18, 1e-12);
    EXPECT_NEAR(p.two_flexion_links[1], 0.36, 1e-12);
    EXPECT_NO_THROW(validate(p));
}

TEST(HandParams, ValidationCatchesBrokenIdentities) {
    auto p = normalized_params();
    p.hand_width = 0.6;
    EXPECT_THROW(validate(p), ParameterError);
    p = normalized_params();
    p.palm_depth = 0.5;
    EXPECT_THROW(validate(p), ParameterError);
    p = normalized_params();
    p.two_flexion_links = {0.2, 0.2};
    EXPECT_THROW(validate(p), ParameterError);
    p = normalized_params();
    p.thumb_links[1] = -0.1;
    EXPECT_THROW(validate(p), ParameterError);
}

TEST(Config, CaseRoundTrip) {
    for (int id = 1; id <= 7; ++id) {
        const auto c = case_spec(id);
        EXPECT_EQ(case_from_json(Json::parse(to_json(c).dump())), c);
    }
    auto custom = case_spec(4);
    custom.id = 12;
    custom.little_side_limits.hi = 7 * pi / 45;
    custom.finger.abduction = {-0.1, 0.2};
    EXPECT_EQ(case_from_json(Json::parse(dump(to_json(custom)))), custom);
}

TEST(Config, CatalogRoundTrip) {
    const auto cases = cases_from_json(Json::parse(dump(case_catalog())));
    ASSERT_EQ(cases.size(), 7u);
    for (int id = 1; id <= 7; ++id) EXPECT_EQ(cases[id - 1], case_spec(id));
}

TEST(Config, ParamsRoundTrip) {
    auto p = normalized_params();
    EXPECT_EQ(hand_params_from_json(Json::parse(to_json(p).dump())), p);
    p.thumb_base = Vec3(0.1, -0.2, 0.3);
    EXPECT_EQ(hand_params_from_json(Json::parse(to_json(p).dump())), p);
    EXPECT_EQ(hand_params_from_json(Json::object()), normalized_params());
}

TEST(Config, Errors) {
    EXPECT_THROW(case_from_json(Json{{"palm_joints", Json::array()}}), ConfigurationError);
    EXPECT_THROW(case_from_json(Json{{"id", 9}, {"palm_joints", {"wrist"}}}), ConfigurationError);
    EXPECT_THROW(case_from_json(Json{{"id", 9}, {"ring_flexion", 4}}), ConfigurationError);
    EXPECT_THROW(case_from_json(Json{{"id", 1}, {"total_dof", 30}}), ConfigurationError);
    EXPECT_THROW(case_from_json(Json{{"id", 1}, {"ring_side_limits", {0.0}}}), ConfigurationError);
    EXPECT_THROW(hand_params_from_json(Json{{"palm_depth", "deep"}}), ConfigurationError);
    EXPECT_THROW(hand_params_from_json(Json{{"palm_depth", 0.3}}), ParameterError);
    EXPECT_THROW(read_json("/nonexistent/params.json"), IoError);
}
