#include <gtest/gtest.h>

#include <cmath>

#include "signsight/viewpoints.hpp"
#include "test_support.hpp"

using namespace signsight;
using namespace signsight::testing;

namespace {

// Right outline on x = 0, left outline on x = -width, sections every
// `interval` meters back from y = anchor.
ArcSampling straight_sampling(double width, double anchor, int sections, double interval, double z = 0) {
  ArcSampling s;
  for (int k = 0; k < sections; ++k) {
    const double y = anchor - k * interval;
    s.right.emplace_back(0, y, z);
    s.left.emplace_back(-width, y, z);
    s.mid.emplace_back(-width / 2, y, z);
    s.cumulative.push_back(k * interval);
  }
  return s;
}

}  // namespace

TEST(LaneCount, Examples) {
  const LaneCount two = lane_count(7.4, 3.5);
  EXPECT_EQ(two.lanes, 2);
  EXPECT_DOUBLE_EQ(two.lane_width, 3.7);
  EXPECT_FALSE(two.clamped);
  const LaneCount one = lane_count(3.5, 3.5);
  EXPECT_EQ(one.lanes, 1);
  EXPECT_DOUBLE_EQ(one.lane_width, 3.5);
  EXPECT_FALSE(one.clamped);
  const LaneCount narrow = lane_count(3.0, 3.5);
  EXPECT_EQ(narrow.lanes, 1);
  EXPECT_DOUBLE_EQ(narrow.lane_width, 3.0);
  EXPECT_TRUE(narrow.clamped);
  EXPECT_THROW(lane_count(0, 3.5), Error);
}

TEST(LaneCount, FloorProperty) {
  Gen gen(501);
  for (int trial = 0; trial < 1000; ++trial) {
    const double w = gen.uniform(0.5, 30), std_lane = gen.uniform(2.5, 4.5);
    const LaneCount c = lane_count(w, std_lane);
    EXPECT_GE(c.lanes, 1);
    EXPECT_NEAR(c.lanes * c.lane_width, w, 1e-9);
    if (!c.clamped) {
      EXPECT_LE(c.lanes * std_lane, w + 1e-6);
      EXPECT_GT((c.lanes + 1) * std_lane, w);
    }
  }
}

TEST(DividingLines, MiddleLineAndClosure) {
  const ArcSampling s = straight_sampling(7.4, 80, 31, 2);
  const auto lines = dividing_lines(s, 2);
  ASSERT_EQ(lines.size(), 3u);
  for (std::size_t k = 0; k < s.size(); ++k) {
    EXPECT_EQ(lines[0][k], s.right[k]);
    EXPECT_NEAR((lines[1][k] - s.right[k]).norm(), 3.7, 1e-12);
    EXPECT_NEAR((lines[2][k] - s.left[k]).norm(), 0.0, 1e-9);
  }
}

TEST(DividingLines, OneLaneHasOnlyOutlines) {
  const auto lines = dividing_lines(straight_sampling(3.5, 50, 5, 2), 1);
  EXPECT_EQ(lines.size(), 2u);
}

TEST(DividingLines, ClosureOnVaryingWidths) {
  Gen gen(502);
  ArcSampling s;
  for (int k = 0; k < 40; ++k) {
    const Point3 a(gen.uniform(-1, 1), 80 - 2.0 * k, gen.uniform(-0.2, 0.2));
    s.right.push_back(a);
    s.left.push_back(a + Point3(-gen.uniform(6, 9), gen.uniform(-0.5, 0.5), gen.uniform(-0.1, 0.1)));
    s.mid.push_back(0.5 * (s.right.back() + s.left.back()));
    s.cumulative.push_back(2.0 * k);
  }
  for (int m = 1; m <= 3; ++m) {
    const auto lines = dividing_lines(s, m);
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_NEAR((lines[m][k] - s.left[k]).norm(), 0.0, 1e-9);
      for (int i = 0; i < m; ++i) {
        EXPECT_NEAR((lines[i + 1][k] - lines[i][k]).norm(), (s.left[k] - s.right[k]).norm() / m, 1e-9);
      }
    }
  }
}

TEST(DividingLines, CoincidentOutlinesThrow) {
  ArcSampling s = straight_sampling(7.4, 80, 5, 2);
  s.left[3] = s.right[3];
  try {
    dividing_lines(s, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateCrossSection);
  }
}

TEST(Viewpoints, LaneCentersAtEyeHeight) {
  const ArcSampling s = straight_sampling(7.4, 80, 31, 2);
  const LaneGrid g = viewpoints(dividing_lines(s, 2), 1.2);
  ASSERT_EQ(g.lanes, 2);
  ASSERT_EQ(g.columns(), 31u);
  EXPECT_DOUBLE_EQ(g.lane_width, 3.7);
  for (std::size_t j = 0; j < g.columns(); ++j) {
    EXPECT_NEAR(g.viewpoints[0][j].x(), -1.85, 1e-12);
    EXPECT_NEAR(g.viewpoints[1][j].x(), -5.55, 1e-12);
    EXPECT_NEAR(g.viewpoints[0][j].z(), 1.2, 1e-12);
  }
}

TEST(Viewpoints, ColumnsGrowTowardTheSign) {
  const LaneGrid g = viewpoints(dividing_lines(straight_sampling(7.4, 80, 31, 2), 2), 1.2);
  EXPECT_NEAR(g.viewpoints[0].back().y(), 80, 1e-12);
  EXPECT_NEAR(g.viewpoints[0].front().y(), 20, 1e-12);
  EXPECT_DOUBLE_EQ(g.approach[0].back(), 0.0);
  EXPECT_NEAR(g.approach[0].front(), 60.0, 1e-9);
  for (std::size_t j = 0; j + 1 < g.columns(); ++j) {
    EXPECT_NEAR(g.approach[0][j] - g.approach[0][j + 1], 2.0, 1e-9);
    EXPECT_EQ(g.section_of(j), g.columns() - 1 - j);
  }
}

TEST(Viewpoints, ZeroEyeHeightSitsOnTheRoad) {
  const LaneGrid g = viewpoints(dividing_lines(straight_sampling(7.4, 80, 5, 2, 3.0), 1), 0.0);
  for (const auto& vp : g.viewpoints[0]) EXPECT_NEAR(vp.z(), 3.0, 1e-12);
}

TEST(Viewpoints, StrictlyBetweenTheOutlines) {
  Gen gen(503);
  for (int trial = 0; trial < 50; ++trial) {
    const double width = gen.uniform(3.6, 15);
    const LaneCount c = lane_count(width, 3.5);
    const ArcSampling s = straight_sampling(width, 60, 10, 2);
    const LaneGrid g = viewpoints(dividing_lines(s, c.lanes), 1.2);
    for (const auto& col : g.viewpoints) {
      for (const auto& vp : col) {
        EXPECT_LT(vp.x(), 0.0);
        EXPECT_GT(vp.x(), -width);
      }
    }
  }
}
