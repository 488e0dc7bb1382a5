#pragma once

#include <span>
#include <vector>

#include "signsight/geometry.hpp"

namespace signsight {

/// Rigid transform into the observation frame: the object center goes to the
/// origin and the center-to-eye line onto +z, so the eye sits at (0, 0, D).
/// Roll about the view axis puts world up (+z) on the frame's +y half-plane,
/// which makes the frame independent of yaw and translation of the scene.
struct ViewTransform {
  Rotation3d rotation = Rotation3d::Identity();
  Point3 center = Point3::Zero();
  double distance = 0;

  Point3 apply(const Point3& world) const { return rotation * (world - center); }
  Point3 eye() const { return Point3(0, 0, distance); }
};

/// Throws DegenerateStep when `eye` coincides with `center`.
ViewTransform view_transform(const Point3& center, const Point3& eye);

/// Central projection of world points from the eye onto the frame's z = 0
/// plane. Throws BehindPupil when a point is not in front of the eye.
std::vector<Point2> project_to_view_plane(std::span<const Point3> world, const ViewTransform& view);

/// Retinal image area of a polygon lying in the view plane, i.e. at depth
/// `distance` in front of the pupil, for a pinhole eye of focal `retina_distance`.
double retinal_area(const Polygon2d& view_plane_polygon, double distance, double retina_distance);

}  // namespace signsight
