#include "teleclone/optimize.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace teleclone;

TEST(Optimize, FindsInteriorMaximum) {
  const auto res = maximize([](double x) { return -(x - 0.37) * (x - 0.37) + 2.0; }, 0.0, 1.0);
  EXPECT_NEAR(res.location, 0.37, 1e-6);
  EXPECT_NEAR(res.value, 2.0, 1e-12);
  EXPECT_FALSE(res.degenerate);
  EXPECT_LE(res.bracket_lo, res.location);
  EXPECT_GE(res.bracket_hi, res.location);
}

TEST(Optimize, MonotoneObjectiveReturnsEndpoint) {
  const auto res = maximize([](double x) { return x; }, 0.0, 2.0);
  EXPECT_NEAR(res.location, 2.0, 1e-6);
}

TEST(Optimize, FlatObjectiveIsDegenerate) {
  const auto res = maximize([](double) { return 0.5; }, 0.0, 1.0);
  EXPECT_TRUE(res.degenerate);
  EXPECT_DOUBLE_EQ(res.bracket_lo, 0.0);
  EXPECT_DOUBLE_EQ(res.bracket_hi, 1.0);
}

TEST(Optimize, RejectsEmptyInterval) {
  EXPECT_THROW(maximize([](double x) { return x; }, 1.0, 1.0), Error);
  EXPECT_THROW(maximize([](double x) { return x; }, 0.0, 1.0, {2}), Error);
}
