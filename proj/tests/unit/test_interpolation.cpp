#include <gtest/gtest.h>

#include "support/golden.hpp"

using namespace vpart;

TEST(Interpolation, ThreeBySixClosedForm) {
  const auto a = example_3x6();
  const auto c = chamber_of(a, {1, 3, -2});
  EXPECT_EQ(interpolate(a, c), parse_poly("(b1+2)*(b1+1)*(2*b1+3*b2+3*b3+3)/6", 3));
}

TEST(Interpolation, PlanSamplesAreInterior) {
  const auto a = kostant_matrix(4);
  const auto c = chamber_of(a, {1, 1, 1, -3});
  const auto plan = make_plan(a, c);
  EXPECT_EQ(plan.degree, 3u);
  EXPECT_EQ(plan.free_coords, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(plan.samples.size(), 20u);
  EXPECT_EQ(plan.holdouts.size(), 5u);
  for (const auto& s : plan.samples) EXPECT_TRUE(strictly_inside(c, s));
  for (const auto& s : plan.holdouts) EXPECT_TRUE(strictly_inside(c, s));
}

TEST(Interpolation, SeedOnlyMovesHoldouts) {
  const auto a = kostant_matrix(4);
  const auto c = chamber_of(a, {1, 1, 1, -3});
  InterpolationOptions o1, o2;
  o2.seed = 7;
  const auto p1 = make_plan(a, c, o1), p2 = make_plan(a, c, o2);
  EXPECT_EQ(p1.samples, p2.samples);
  EXPECT_EQ(interpolate(a, p1), interpolate(a, p2));
}

TEST(Interpolation, HoldoutOutsideChamberIsDetected) {
  const auto a = example_3x5();
  const auto c = chamber_of(a, {5, 1, 1});
  auto plan = make_plan(a, c);
  plan.holdouts.push_back({1, 5, 5});  // different chamber, different polynomial
  try {
    interpolate(a, plan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HoldoutMismatch);
  }
}

TEST(Interpolation, NonInteriorRepresentative) {
  const auto a = example_3x5();
  auto c = chamber_of(a, {5, 1, 1});
  c.representative = {2, 1, 1};
  try {
    make_plan(a, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CannotSample);
  }
}

TEST(Interpolation, ThreadedMatchesSerial) {
  const auto a = kostant_matrix(4);
  const auto c = enumerate_chambers(a).chambers.at(3);
  InterpolationOptions o;
  o.threads = 3;
  EXPECT_EQ(interpolate(a, c, o), interpolate(a, c));
}

TEST(Interpolation, AgreesWithToddOnAllKostantFourChambers) {
  const auto a = kostant_matrix(4);
  for (const auto& c : enumerate_chambers(a).chambers) EXPECT_EQ(interpolate(a, c), chamber_polynomial_todd(a, c));
}

TEST(Interpolation, KostantFourGolden) {
  const auto a = kostant_matrix(4);
  const auto cx = enumerate_chambers(a);
  for (const auto& g : vtest::load_golden("kostant4_chambers.txt", 4)) {
    const int i = vtest::find_chamber(cx, g);
    ASSERT_GE(i, 0) << "item " << g.id;
    EXPECT_EQ(interpolate(a, cx.chambers[static_cast<std::size_t>(i)]), g.poly) << "item " << g.id;
  }
}

TEST(Interpolation, KostantFiveGoldenSubset) {
  const auto a = kostant_matrix(5);
  const auto cx = enumerate_chambers(a);
  for (const auto& g : vtest::load_golden("kostant5_factored.txt", 5)) {
    if (g.id > 6) continue;
    const int i = vtest::find_chamber(cx, g);
    ASSERT_GE(i, 0) << "item " << g.id;
    EXPECT_EQ(interpolate(a, cx.chambers[static_cast<std::size_t>(i)]), g.poly) << "item " << g.id;
  }
}
