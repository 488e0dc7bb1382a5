#include "signsight/view.hpp"

namespace signsight {

ViewTransform view_transform(const Point3& center, const Point3& eye) {
  const Point3 axis = eye - center;
  const double d = axis.norm();
  if (!(d > 0)) throw Error(ErrorKind::DegenerateStep, "viewpoint coincides with the object center");

  Rotation3d q = rotation_aligning<double>(axis, Point3::UnitZ());
  const Point3 up = q * Point3::UnitZ();
  const Point2 up_plane = up.head<2>();
  if (up_plane.norm() > 1e-9) {
    const double roll = std::atan2(up_plane.x(), up_plane.y());
    q = Rotation3d(Eigen::AngleAxisd(roll, Point3::UnitZ())) * q;
  }
  q.normalize();
  return {q, center, d};
}

std::vector<Point2> project_to_view_plane(std::span<const Point3> world, const ViewTransform& view) {
  const Point3 eye = view.eye();
  std::vector<Point2> out;
  out.reserve(world.size());
  for (const Point3& w : world) {
    const Point3 p = view.apply(w);
    if (!(p.z() < view.distance)) throw Error(ErrorKind::BehindPupil, "panel point is level with or behind the eye");
    out.push_back(ray_plane_xy_intersection<double>(eye, p));
  }
  return out;
}

double retinal_area(const Polygon2d& view_plane_polygon, double distance, double retina_distance) {
  // Eye frame: pupil at the origin looking down -z, the view plane at depth `distance`.
  std::vector<Point3> eye_frame;
  eye_frame.reserve(view_plane_polygon.size());
  for (const Point2& v : view_plane_polygon.vertices()) eye_frame.emplace_back(v.x(), v.y(), -distance);
  const auto image = retinal_projection<double>(eye_frame, retina_distance);
  return polygon_area(Polygon2d(image));
}

}  // namespace signsight
