#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "signsight/geometry.hpp"
#include "signsight/view.hpp"
#include "test_support.hpp"

using namespace signsight;
using signsight::testing::Gen;

namespace {

// Rodrigues matrix for the rotation taking unit f onto unit t.
Eigen::Matrix3d rodrigues_oracle(const Point3& f, const Point3& t) {
  const Point3 axis = f.cross(t);
  const double s = axis.norm();
  const double c = f.dot(t);
  Eigen::Matrix3d k;
  k << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
  if (s < 1e-15) return Eigen::Matrix3d::Identity();
  return Eigen::Matrix3d::Identity() + k + k * k * ((1 - c) / (s * s));
}

// Area of a convex polygon as a fan of triangles, each by Heron's formula.
double heron_fan_area(const std::vector<Point2>& v) {
  double area = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double a = (v[i] - v[0]).norm(), b = (v[i + 1] - v[i]).norm(), c = (v[0] - v[i + 1]).norm();
    const double s = (a + b + c) / 2;
    area += std::sqrt(std::max(0.0, s * (s - a) * (s - b) * (s - c)));
  }
  return area;
}

// Winding number about p, summing signed angles.
int winding_number(const Point2& p, const std::vector<Point2>& v) {
  double total = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i] - p, b = v[(i + 1) % v.size()] - p;
    total += std::atan2(cross2(a, b), a.dot(b));
  }
  return static_cast<int>(std::lround(total / (2 * kPi)));
}

std::vector<Point2> regular_polygon(int n, double r) {
  std::vector<Point2> v;
  for (int i = 0; i < n; ++i) v.emplace_back(r * std::cos(2 * kPi * i / n), r * std::sin(2 * kPi * i / n));
  return v;
}

}  // namespace

TEST(Rotation, ZOntoZIsIdentity) {
  const Rotation3d q = rotation_aligning<double>(Point3::UnitZ(), Point3::UnitZ());
  EXPECT_TRUE(q.toRotationMatrix().isApprox(Eigen::Matrix3d::Identity(), 1e-12));
}

TEST(Rotation, ZOntoX) {
  const Rotation3d q = rotation_aligning<double>(Point3::UnitZ(), Point3::UnitX());
  EXPECT_TRUE((q * Point3::UnitZ()).isApprox(Point3::UnitX(), 1e-12));
}

TEST(Rotation, ZOntoDiagonal) {
  const Point3 d = Point3(1, 1, 1).normalized();
  const Point3 r = rotation_aligning<double>(Point3::UnitZ(), d) * Point3::UnitZ();
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r[i], 0.5774, 1e-4);
}

TEST(Rotation, AntiparallelTurnsByPi) {
  const Rotation3d q = rotation_aligning<double>(Point3::UnitZ(), -Point3::UnitZ());
  EXPECT_TRUE((q * Point3::UnitZ()).isApprox(-Point3::UnitZ(), 1e-12));
  EXPECT_NEAR(q.toRotationMatrix().determinant(), 1.0, 1e-12);
}

TEST(Rotation, ZeroDirectionThrows) {
  try {
    rotation_aligning<double>(Point3::Zero(), Point3::UnitX());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateStep);
  }
}

TEST(Rotation, MatchesRodriguesOracle) {
  Gen gen(101);
  for (int trial = 0; trial < 500; ++trial) {
    const Point3 f = gen.unit(), t = gen.unit();
    if (f.dot(t) < -0.999) continue;
    const Eigen::Matrix3d got = rotation_aligning<double>(f, t).toRotationMatrix();
    EXPECT_TRUE(got.isApprox(rodrigues_oracle(f, t), 1e-9)) << "trial " << trial;
  }
}

TEST(Rotation, IsAnIsometryTakingFromOntoTo) {
  Gen gen(102);
  for (int trial = 0; trial < 500; ++trial) {
    const Point3 f = gen.unit() * gen.uniform(0.1, 10), t = gen.unit() * gen.uniform(0.1, 10);
    const Rotation3d q = rotation_aligning<double>(f, t);
    EXPECT_NEAR((q * f.normalized() - t.normalized()).norm(), 0.0, 1e-9);
    const Point3 a = gen.point(5), b = gen.point(5);
    EXPECT_NEAR((q * a - q * b).norm(), (a - b).norm(), 1e-9);
    EXPECT_NEAR(q.toRotationMatrix().determinant(), 1.0, 1e-9);
  }
}

TEST(Polygon, Areas) {
  EXPECT_DOUBLE_EQ(polygon_area(Polygon2d({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), 1.0);
  EXPECT_DOUBLE_EQ(polygon_area(Polygon2d({{0, 0}, {2, 0}, {0, 2}})), 2.0);
  EXPECT_NEAR(polygon_area(Polygon2d(regular_polygon(6, 1.0))), 2.59808, 1e-5);
}

TEST(Polygon, ClockwiseInputIsReoriented) {
  const Polygon2d p({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  EXPECT_GT(p.signed_area(), 0);
}

TEST(Polygon, DegenerateInputsThrow) {
  EXPECT_THROW(Polygon2d({{0, 0}, {1, 0}}), Error);
  EXPECT_THROW(Polygon2d({{0, 0}, {1, 0}, {2, 0}}), Error);
}

TEST(Polygon, AreaMatchesHeronOracleOnRandomConvexPolygons) {
  Gen gen(103);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(3, 12);
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back(gen.uniform(0, 2 * kPi));
    std::sort(angles.begin(), angles.end());
    const double r = gen.uniform(0.1, 20);
    std::vector<Point2> v;
    for (double a : angles) v.emplace_back(r * std::cos(a), r * std::sin(a));
    const double oracle = heron_fan_area(v);
    if (oracle < 1e-6) continue;
    EXPECT_NEAR(polygon_area(Polygon2d(v)), oracle, 1e-9 * std::max(1.0, oracle));
  }
}

TEST(Polygon, CentroidOfSquare) {
  const Polygon2d p({{1, 1}, {3, 1}, {3, 3}, {1, 3}});
  EXPECT_TRUE(polygon_centroid(p).isApprox(Point2(2, 2), 1e-12));
}

TEST(PointInPolygon, Examples) {
  const Polygon2d square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_TRUE(point_in_polygon(Point2(0.5, 0.5), square));
  EXPECT_FALSE(point_in_polygon(Point2(2, 0), square));
  EXPECT_TRUE(point_in_polygon(Point2(1, 0.5), square));
}

TEST(PointInPolygon, AgreesWithWindingNumberOnStarPolygons) {
  Gen gen(104);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen.integer(3, 16);
    std::vector<Point2> v;
    for (int i = 0; i < n; ++i) {
      const double a = 2 * kPi * (i + gen.uniform(0.1, 0.9)) / n;
      const double r = gen.uniform(0.3, 2.0);
      v.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    const Polygon2d poly(v);
    for (int k = 0; k < 50; ++k) {
      const Point2 p(gen.uniform(-2.5, 2.5), gen.uniform(-2.5, 2.5));
      double edge = 1e9;
      for (std::size_t i = 0; i < v.size(); ++i) edge = std::min(edge, point_segment_distance(p, v[i], v[(i + 1) % n]));
      if (edge < 1e-6) continue;
      EXPECT_EQ(point_in_polygon(p, poly), winding_number(p, v) != 0);
    }
  }
}

TEST(RayPlane, Examples) {
  EXPECT_TRUE(ray_plane_xy_intersection<double>(Point3(0, 0, 10), Point3(0, 0.1, 5)).isApprox(Point2(0, 0.2), 1e-12));
  const Point2 axis = ray_plane_xy_intersection<double>(Point3(0, 0, 10), Point3(0, 0, 3));
  EXPECT_NEAR(axis.norm(), 0.0, 1e-12);
  try {
    ray_plane_xy_intersection<double>(Point3(0, 0, 10), Point3(1, 0, 10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoIntersection);
  }
}

TEST(RayPlane, LandsOnTheLineAndThePlane) {
  Gen gen(105);
  for (int trial = 0; trial < 300; ++trial) {
    const Point3 o = gen.point(10), t = gen.point(10);
    if (std::abs(t.z() - o.z()) < 1e-3) continue;
    const Point2 x = ray_plane_xy_intersection<double>(o, t);
    const Point3 hit(x.x(), x.y(), 0);
    const Point3 d = (t - o).normalized();
    EXPECT_NEAR(((hit - o) - d * (hit - o).dot(d)).norm(), 0.0, 1e-7 * std::max(1.0, (hit - o).norm()));
  }
}

TEST(RetinalProjection, FrontalSquareAreas) {
  auto area_at = [](double d) {
    std::vector<Point3> corners = {{-0.3, -0.3, -d}, {0.3, -0.3, -d}, {0.3, 0.3, -d}, {-0.3, 0.3, -d}};
    const auto img = retinal_projection<double>(corners, 0.017);
    return polygon_area(Polygon2d(img));
  };
  EXPECT_NEAR(area_at(2.0), 2.601e-5, 1e-9);
  EXPECT_NEAR(area_at(4.0), 6.5025e-6, 1e-10);
  EXPECT_NEAR(area_at(3.0) / area_at(6.0), 4.0, 1e-9);
}

TEST(RetinalProjection, PointBehindPupilThrows) {
  std::vector<Point3> pts = {{0, 0, 1}};
  try {
    retinal_projection<double>(pts, 0.017);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BehindPupil);
  }
}

TEST(RetinalProjection, PinholeSimilarTrianglesOracle) {
  Gen gen(106);
  std::vector<Point3> pts;
  for (int i = 0; i < 200; ++i) pts.emplace_back(gen.uniform(-3, 3), gen.uniform(-3, 3), -gen.uniform(0.5, 80));
  const auto img = retinal_projection<double>(pts, 0.017);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // The image point, the pupil and the object point are collinear.
    const Point3 image(img[i].x(), img[i].y(), -0.017);
    EXPECT_NEAR(image.normalized().cross(pts[i].normalized()).norm(), 0.0, 1e-12);
  }
}

TEST(ViewTransform, EyeLandsOnPositiveZ) {
  Gen gen(107);
  for (int trial = 0; trial < 200; ++trial) {
    const Point3 c = gen.point(50), eye = c + gen.unit() * gen.uniform(0.5, 80);
    const ViewTransform v = view_transform(c, eye);
    const Point3 e = v.apply(eye);
    EXPECT_NEAR(e.head<2>().norm(), 0.0, 1e-9);
    EXPECT_NEAR(e.z(), (eye - c).norm(), 1e-9);
    EXPECT_NEAR(v.apply(c).norm(), 0.0, 1e-12);
  }
}

TEST(ViewTransform, CoincidentEyeThrows) {
  EXPECT_THROW(view_transform(Point3(1, 2, 3), Point3(1, 2, 3)), Error);
}

TEST(ViewTransform, CentralProjectionOfPlanePointsIsIdentity) {
  const ViewTransform v = view_transform(Point3(0, 0, 0), Point3(0, 10, 0));
  std::vector<Point3> world = {{0.3, 0, 0.2}, {-0.1, 0, -0.4}};
  const auto proj = project_to_view_plane(world, v);
  for (std::size_t i = 0; i < world.size(); ++i) {
    EXPECT_TRUE(proj[i].isApprox(v.apply(world[i]).head<2>(), 1e-12));
  }
}

TEST(ViewTransform, RetinalAreaScalesWithInverseSquareDistance) {
  const Polygon2d sq({{-0.3, -0.3}, {0.3, -0.3}, {0.3, 0.3}, {-0.3, 0.3}});
  EXPECT_NEAR(retinal_area(sq, 2.0, 0.017), 2.601e-5, 1e-10);
  EXPECT_NEAR(retinal_area(sq, 2.0, 0.017) / retinal_area(sq, 4.0, 0.017), 4.0, 1e-12);
}
