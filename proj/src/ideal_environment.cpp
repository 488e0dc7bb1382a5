#include "signsight/ideal_environment.hpp"

#include <cmath>

namespace signsight {

Point3 ideal_normal(double depression, double pass_angle) {
  return {std::cos(depression) * std::sin(pass_angle), std::cos(depression) * std::cos(pass_angle),
          std::sin(depression)};
}

namespace {

// Turns the canonical frame (x right, y normal, z up) so y lands on `normal`
// while the panel's x axis stays horizontal.
Eigen::Matrix3d upright_pose(const Point3& normal) {
  Point3 right = normal.cross(Point3::UnitZ());
  if (right.norm() < 1e-12) right = Point3::UnitX();
  right.normalize();
  Eigen::Matrix3d m;
  m.col(0) = right;
  m.col(1) = normal.normalized();
  m.col(2) = right.cross(m.col(1));
  return m;
}

}  // namespace

IdealScene build_ideal_scene(const SignLibraryEntry& entry, const ModelParams& params, SignSide side,
                             std::optional<double> d_sign) {
  if (entry.panel.empty()) throw Error(ErrorKind::UnknownSignType, "sign type " + entry.type + " has no panel");
  IdealScene scene;
  scene.design_speed = params.design_speed;
  scene.gfov = gfov(params.design_speed);

  SignInstance& sign = scene.sign;
  sign.id = "ideal:" + entry.type;
  sign.type = entry.type;
  sign.side = side;
  sign.normal = ideal_normal(params.depression, params.pass_angle);
  if (side == SignSide::Right) {
    sign.center = Point3(params.shoulder_width, 0, params.mount_height);
  } else {
    if (!d_sign) throw Error(ErrorKind::Validation, "overhead ideal scene needs d_sign");
    sign.center = Point3(-*d_sign, 0, params.overhead_height);
  }

  Point3 centroid = Point3::Zero();
  for (const auto& p : entry.panel.points) centroid += p;
  centroid /= double(entry.panel.size());
  const Eigen::Matrix3d pose = upright_pose(sign.normal);
  sign.panel.points.reserve(entry.panel.size());
  for (const auto& p : entry.panel.points) sign.panel.points.push_back(pose * (p - centroid) + sign.center);
  sign.panel.intensity = entry.panel.intensity;
  return scene;
}

Point3 corresponding_viewpoint(const VisibilityRecord& record, const ModelParams& params) {
  return {-record.d_width, record.d_length, params.eye_height};
}

IdealVisibility ideal_visibility(const IdealScene& scene, const Point3& viewpoint, const SignLibraryEntry& entry,
                                 const ModelParams& params) {
  IdealVisibility out;
  const ViewFrame frame = build_view_frame(scene.sign, EnvironmentView{}, viewpoint, params);
  out.e_geo = geometric_factor(frame, entry, params).e_geo;
  out.sight_angle = angle_between(Point3(-Point3::UnitY()), Point3(scene.sign.center - viewpoint));
  out.e_sight = sight_line_factor(out.sight_angle, scene.gfov, params.eta);
  out.e_visibility = out.e_geo * out.e_sight;
  return out;
}

}  // namespace signsight
