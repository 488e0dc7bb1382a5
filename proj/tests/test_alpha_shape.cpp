#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "signsight/alpha_shape.hpp"
#include "test_support.hpp"

using namespace signsight;
using signsight::testing::Gen;

namespace {

std::vector<Point2> square_grid(double size, double spacing, const Point2& origin = Point2::Zero()) {
  std::vector<Point2> pts;
  const int n = static_cast<int>(std::lround(size / spacing));
  for (int i = 0; i <= n; ++i) {
    for (int k = 0; k <= n; ++k) pts.emplace_back(origin.x() + i * spacing, origin.y() + k * spacing);
  }
  return pts;
}

// Circumcircle test by the 3x3 in-circle determinant, independent of the
// triangulation's own predicate.
bool strictly_in_circumcircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const Point2 ad = a - d, bd = b - d, cd = c - d;
  const double det = (ad.squaredNorm()) * cross2(bd, cd) - (bd.squaredNorm()) * cross2(ad, cd) +
                     (cd.squaredNorm()) * cross2(ad, bd);
  const double scale = ad.squaredNorm() * bd.norm() * cd.norm() + 1e-300;
  return det / scale > 1e-9;
}

}  // namespace

TEST(AlphaShape, GridSquareArea) {
  const auto pts = square_grid(0.6, 0.05);
  const Polygon2d b = alpha_shape_boundary(pts, 0.1);
  EXPECT_NEAR(polygon_area(b), 0.36, 0.02 * 0.36);
}

TEST(AlphaShape, EquilateralTriangle) {
  const std::vector<Point2> pts = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  const Polygon2d b = alpha_shape_boundary(pts, 10.0);
  EXPECT_EQ(b.size(), 3u);
  EXPECT_NEAR(polygon_area(b), std::sqrt(3.0) / 4, 1e-12);
}

TEST(AlphaShape, TwoPointsAreDegenerate) {
  const std::vector<Point2> pts = {{0, 0}, {1, 0}};
  try {
    alpha_shape_boundary(pts, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegeneratePolygon);
  }
}

TEST(AlphaShape, CollinearPointsAreDegenerate) {
  std::vector<Point2> pts;
  for (int i = 0; i < 10; ++i) pts.emplace_back(i * 0.1, i * 0.2);
  EXPECT_THROW(alpha_shape_boundary(pts, 1.0), Error);
}

TEST(AlphaShape, TinyAlphaLeavesNoTriangle) {
  const auto pts = square_grid(0.6, 0.05);
  EXPECT_THROW(alpha_shape_boundary(pts, 0.01), Error);
}

TEST(AlphaShape, LargeAlphaIsTheConvexHull) {
  Gen gen(201);
  std::vector<Point2> pts;
  for (int i = 0; i < 300; ++i) pts.emplace_back(gen.uniform(-1, 1), gen.uniform(-1, 1));
  EXPECT_NEAR(polygon_area(alpha_shape_boundary(pts, 1e6)), polygon_area(convex_hull(pts)), 1e-9);
}

TEST(AlphaShape, SeparateClustersBecomeComponents) {
  auto pts = square_grid(0.6, 0.05);
  const auto other = square_grid(0.3, 0.05, Point2(2, 0));
  pts.insert(pts.end(), other.begin(), other.end());
  const auto comps = alpha_shape_components(pts, 0.1);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_NEAR(polygon_area(comps[0]), 0.36, 1e-9);
  EXPECT_NEAR(polygon_area(comps[1]), 0.09, 1e-9);
}

TEST(AlphaShape, ConcaveNotchIsFollowed) {
  // L shape: a 0.6 square minus its upper-right 0.3 quadrant.
  std::vector<Point2> pts;
  for (const auto& p : square_grid(0.6, 0.05)) {
    if (p.x() > 0.3 + 1e-9 && p.y() > 0.3 + 1e-9) continue;
    pts.push_back(p);
  }
  const Polygon2d b = alpha_shape_boundary(pts, 0.1);
  EXPECT_NEAR(polygon_area(b), 0.27, 0.02 * 0.27);
  EXPECT_LT(polygon_area(b), polygon_area(convex_hull(pts)) - 0.01);
}

TEST(AlphaShape, BoundaryVerticesAreInputPoints) {
  Gen gen(202);
  std::vector<Point2> pts;
  for (int i = 0; i < 400; ++i) pts.emplace_back(gen.uniform(0, 1), gen.uniform(0, 1));
  const Polygon2d b = alpha_shape_boundary(pts, 0.15);
  for (const auto& v : b.vertices()) {
    bool found = false;
    for (const auto& p : pts) found = found || (p - v).norm() == 0.0;
    EXPECT_TRUE(found);
  }
}

TEST(AlphaShape, AreaNeverExceedsHull) {
  Gen gen(203);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Point2> pts;
    const int n = gen.integer(3, 300);
    const double extent = gen.uniform(0.2, 5);
    for (int i = 0; i < n; ++i) pts.emplace_back(gen.uniform(0, extent), gen.uniform(0, extent));
    const double alpha = gen.uniform(0.05, 3);
    double area = 0;
    try {
      area = polygon_area(alpha_shape_boundary(pts, alpha));
    } catch (const Error&) {
      continue;
    }
    EXPECT_LE(area, polygon_area(convex_hull(pts)) + 1e-9);
  }
}

TEST(Delaunay, EmptyCircumcircleAgainstBruteForce) {
  Gen gen(204);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point2> pts;
    const int n = gen.integer(3, 120);
    for (int i = 0; i < n; ++i) pts.emplace_back(gen.uniform(-10, 10), gen.uniform(-10, 10));
    const Triangulation t = delaunay_triangulation(pts);
    for (const auto& tri : t.triangles) {
      const Point2 &a = t.points[tri[0]], &b = t.points[tri[1]], &c = t.points[tri[2]];
      EXPECT_GT(cross2(b - a, c - a), 0.0);
      for (std::size_t k = 0; k < t.points.size(); ++k) {
        if (static_cast<int>(k) == tri[0] || static_cast<int>(k) == tri[1] || static_cast<int>(k) == tri[2]) continue;
        EXPECT_FALSE(strictly_in_circumcircle(a, b, c, t.points[k]));
      }
    }
  }
}

TEST(Delaunay, TrianglesTileTheHull) {
  Gen gen(205);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point2> pts;
    const int n = gen.integer(3, 500);
    for (int i = 0; i < n; ++i) pts.emplace_back(gen.uniform(0, 3), gen.uniform(0, 1));
    const Triangulation t = delaunay_triangulation(pts);
    double sum = 0;
    for (const auto& tri : t.triangles) {
      sum += 0.5 * cross2(t.points[tri[1]] - t.points[tri[0]], t.points[tri[2]] - t.points[tri[0]]);
    }
    EXPECT_NEAR(sum, polygon_area(convex_hull(pts)), 1e-9);
    // Euler: a triangulation of n points with h on the hull has 2n - h - 2 triangles.
    const std::size_t h = convex_hull(pts).size();
    EXPECT_EQ(t.triangles.size(), 2 * t.points.size() - h - 2);
  }
}

TEST(Delaunay, DuplicatesAreMerged) {
  std::vector<Point2> pts = {{0, 0}, {1, 0}, {0, 1}, {0, 0}, {1, 0}};
  const Triangulation t = delaunay_triangulation(pts);
  EXPECT_EQ(t.points.size(), 3u);
  EXPECT_EQ(t.triangles.size(), 1u);
}

TEST(Delaunay, NeighborsAreSymmetric) {
  const auto pts = square_grid(1.0, 0.1);
  const Triangulation t = delaunay_triangulation(pts);
  for (std::size_t i = 0; i < t.triangles.size(); ++i) {
    for (int e = 0; e < 3; ++e) {
      const int n = t.neighbors[i][e];
      if (n < 0) continue;
      bool back = false;
      for (int f = 0; f < 3; ++f) back = back || t.neighbors[n][f] == static_cast<int>(i);
      EXPECT_TRUE(back);
    }
  }
}

TEST(ConvexHull, Square) {
  const auto pts = square_grid(1.0, 0.25);
  const Polygon2d h = convex_hull(pts);
  EXPECT_EQ(h.size(), 4u);
  EXPECT_NEAR(polygon_area(h), 1.0, 1e-12);
}

TEST(Delaunay, CocircularGridTilesTheSquare) {
  const auto pts = square_grid(2.0, 0.05);
  const Triangulation t = delaunay_triangulation(pts);
  double sum = 0;
  for (const auto& tri : t.triangles) {
    const double a = 0.5 * cross2(t.points[tri[1]] - t.points[tri[0]], t.points[tri[2]] - t.points[tri[0]]);
    EXPECT_GT(a, 0.0);
    sum += a;
  }
  EXPECT_NEAR(sum, 4.0, 1e-9);
  EXPECT_EQ(t.triangles.size(), 2u * 40u * 40u);
}
