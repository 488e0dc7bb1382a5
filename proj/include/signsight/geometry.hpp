#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "signsight/errors.hpp"

namespace signsight {

template <class Scalar_>
using Vec2 = Eigen::Matrix<Scalar_, 2, 1>;

template <class Scalar_>
using Vec3 = Eigen::Matrix<Scalar_, 3, 1>;

template <class Scalar_>
using Rotation = Eigen::Quaternion<Scalar_>;

using Point2 = Vec2<double>;
using Point3 = Vec3<double>;
using Rotation3d = Rotation<double>;

/// Simple polygon in a plane, stored counter-clockwise.
template <class Scalar_>
class PlanarPolygon {
public:
  using Scalar = Scalar_;
  using Point = Vec2<Scalar_>;

  PlanarPolygon() = default;

  /// Takes the vertex ring in either orientation; rejects fewer than three
  /// vertices or zero area. Simplicity is the caller's contract.
  explicit PlanarPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) {
      throw Error(ErrorKind::DegeneratePolygon, "polygon needs at least 3 vertices");
    }
    const Scalar a = signed_area();
    if (!(std::abs(a) > Scalar(0))) {
      throw Error(ErrorKind::DegeneratePolygon, "polygon has zero area");
    }
    if (a < Scalar(0)) std::reverse(vertices_.begin(), vertices_.end());
  }

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }

  Scalar signed_area() const {
    Scalar twice = 0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      twice += vertices_[j].x() * vertices_[i].y() - vertices_[i].x() * vertices_[j].y();
    }
    return twice / Scalar(2);
  }

private:
  std::vector<Point> vertices_;
};

using Polygon2d = PlanarPolygon<double>;

template <class Scalar_>
Scalar_ polygon_area(const PlanarPolygon<Scalar_>& poly) {
  return std::abs(poly.signed_area());
}

/// Area centroid.
template <class Scalar_>
Vec2<Scalar_> polygon_centroid(const PlanarPolygon<Scalar_>& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  Scalar_ twice = 0;
  Vec2<Scalar_> acc = Vec2<Scalar_>::Zero();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Scalar_ c = v[j].x() * v[i].y() - v[i].x() * v[j].y();
    twice += c;
    acc += (v[j] + v[i]) * c;
  }
  return acc / (Scalar_(3) * twice);
}

/// Distance from p to the closed segment [a, b].
template <class Scalar_>
Scalar_ point_segment_distance(const Vec2<Scalar_>& p, const Vec2<Scalar_>& a,
                               const Vec2<Scalar_>& b) {
  const Vec2<Scalar_> ab = b - a;
  const Scalar_ len2 = ab.squaredNorm();
  Scalar_ t = len2 > Scalar_(0) ? (p - a).dot(ab) / len2 : Scalar_(0);
  t = std::clamp(t, Scalar_(0), Scalar_(1));
  return (a + t * ab - p).norm();
}

/// Crossing-number test. Points within `tol` of an edge count as inside.
template <class Scalar_>
bool point_in_polygon(const Vec2<Scalar_>& p, const PlanarPolygon<Scalar_>& poly,
                      Scalar_ tol = Scalar_(1e-9)) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = v[j];
    const auto& b = v[i];
    if (point_segment_distance(p, a, b) <= tol) return true;
    if ((b.y() > p.y()) != (a.y() > p.y())) {
      const Scalar_ x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

/// Shortest-arc rotation taking `from_dir` onto `to_dir`. Antiparallel inputs
/// rotate by pi about a fixed axis perpendicular to `from_dir`: the cross product
/// with whichever of x, y, z is least aligned with it.
template <class Scalar_>
Rotation<Scalar_> rotation_aligning(const Vec3<Scalar_>& from_dir, const Vec3<Scalar_>& to_dir) {
  const Scalar_ nf = from_dir.norm();
  const Scalar_ nt = to_dir.norm();
  if (!(nf > Scalar_(0)) || !(nt > Scalar_(0))) {
    throw Error(ErrorKind::DegenerateStep, "rotation_aligning needs non-zero directions");
  }
  const Vec3<Scalar_> f = from_dir / nf;
  const Vec3<Scalar_> t = to_dir / nt;
  const Scalar_ c = f.dot(t);
  if (c < Scalar_(-1) + Scalar_(1e-12)) {
    Eigen::Index axis = 0;
    f.cwiseAbs().minCoeff(&axis);
    const Vec3<Scalar_> perp = f.cross(Vec3<Scalar_>::Unit(axis)).normalized();
    return Rotation<Scalar_>(Eigen::AngleAxis<Scalar_>(Scalar_(EIGEN_PI), perp));
  }
  // q = (1 + c, f x t) normalised is the half-angle quaternion.
  const Vec3<Scalar_> axis = f.cross(t);
  Rotation<Scalar_> q(Scalar_(1) + c, axis.x(), axis.y(), axis.z());
  q.normalize();
  return q;
}

/// Intersection with the plane z = 0 of the line from `origin` through `through`.
template <class Scalar_>
Vec2<Scalar_> ray_plane_xy_intersection(const Vec3<Scalar_>& origin, const Vec3<Scalar_>& through) {
  const Vec3<Scalar_> d = through - origin;
  if (std::abs(d.z()) < Scalar_(1e-12)) {
    throw Error(ErrorKind::NoIntersection, "ray is parallel to the z = 0 plane");
  }
  const Scalar_ t = -origin.z() / d.z();
  return (origin + t * d).template head<2>();
}

/// Pinhole image of points expressed in the eye frame (pupil at the origin,
/// looking down -z), on an image plane `retina_distance` behind the pupil.
template <class Scalar_>
std::vector<Vec2<Scalar_>> retinal_projection(std::span<const Vec3<Scalar_>> points,
                                              Scalar_ retina_distance) {
  std::vector<Vec2<Scalar_>> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    const Scalar_ depth = -p.z();
    if (!(depth > retina_distance)) {
      throw Error(ErrorKind::BehindPupil, "point at or behind the pupil");
    }
    out.emplace_back(p.x() * retina_distance / depth, p.y() * retina_distance / depth);
  }
  return out;
}

/// Plan-view (xy) component.
inline Point2 plan(const Point3& p) { return p.head<2>(); }

inline double cross2(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

inline double angle_between(const Point3& a, const Point3& b) {
  // atan2 form stays accurate near 0 and pi.
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

constexpr double kPi = 3.14159265358979323846;
constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace signsight
