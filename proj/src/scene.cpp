#include "signsight/scene.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

#include "signsight/alpha_shape.hpp"
#include "signsight/view.hpp"

namespace signsight {

Trajectory::Trajectory(std::vector<Point3> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw Error(ErrorKind::Validation, "trajectory needs at least 2 points");
  stations_.assign(points_.size(), 0.0);
  for (std::size_t k = 1; k < points_.size(); ++k) {
    const double step = (plan(points_[k]) - plan(points_[k - 1])).norm();
    if (!(step > 0)) {
      throw Error(ErrorKind::Validation, "trajectory has a zero-length step at sample " + std::to_string(k));
    }
    stations_[k] = stations_[k - 1] + step;
  }
}

std::size_t Trajectory::nearest_plan_index(const Point3& p) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const double d = (plan(points_[k]) - plan(p)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

Point2 Trajectory::plan_direction(std::size_t k) const {
  const std::size_t lo = k == 0 ? 0 : k - 1;
  const std::size_t hi = std::min(k + 1, points_.size() - 1);
  return (plan(points_[hi]) - plan(points_[lo])).normalized();
}

const char* to_string(SignSide side) { return side == SignSide::Right ? "right" : "overhead"; }

SignSide parse_sign_side(std::string_view text) {
  if (text == "right") return SignSide::Right;
  if (text == "overhead") return SignSide::Overhead;
  throw Error(ErrorKind::Validation, "sign side must be 'right' or 'overhead', got '" + std::string(text) + "'");
}

std::optional<double> SignLibraryEntry::sight_distance_for(double speed) const {
  std::optional<double> best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const auto& [v, sd] : sight_distance_by_speed) {
    const double gap = std::abs(v - speed);
    if (gap < best_gap) {
      best_gap = gap;
      best = sd;
    }
  }
  return best;
}

PlaneFit plane_fit_center(const PointCloud& panel, const std::optional<Point3>& toward) {
  const std::size_t n = panel.size();
  if (n < 3) throw Error(ErrorKind::DegeneratePanel, "panel needs at least 3 points");
  Point3 centroid = Point3::Zero();
  for (const auto& p : panel.points) centroid += p;
  centroid /= double(n);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : panel.points) {
    const Point3 d = p - centroid;
    cov.noalias() += d * d.transpose();
  }
  cov /= double(n);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  const Eigen::Vector3d ev = es.eigenvalues();  // ascending
  if (!(ev(1) > 1e-12 * std::max(ev(2), 1e-300)) || !(ev(2) > 0)) {
    throw Error(ErrorKind::DegeneratePanel, "panel points are collinear");
  }
  Point3 normal = es.eigenvectors().col(0).normalized();
  if (toward && normal.dot(*toward - centroid) < 0) normal = -normal;
  return {centroid, normal, std::sqrt(std::max(ev(0), 0.0))};
}

PointCloud canonicalize_panel(const PointCloud& panel) {
  const PlaneFit fit = plane_fit_center(panel, Point3(0, 1e9, 0));
  const Rotation3d q = rotation_aligning<double>(fit.normal, Point3::UnitY());
  PointCloud out;
  out.intensity = panel.intensity;
  out.points.reserve(panel.size());
  for (const auto& p : panel.points) out.points.push_back(q * (p - fit.center));
  return out;
}

double standard_area(const PointCloud& canonical_panel, const ModelParams& params) {
  Point3 center = Point3::Zero();
  for (const auto& p : canonical_panel.points) center += p;
  center /= double(std::max<std::size_t>(canonical_panel.size(), 1));
  const Point3 eye = center + params.standard_distance * Point3::UnitY();
  const ViewTransform view = view_transform(center, eye);
  const auto projected = project_to_view_plane(canonical_panel.points, view);
  const Polygon2d boundary = alpha_shape_boundary(projected, params.alpha_radius);
  return retinal_area(boundary, view.distance, params.retina_distance);
}

}  // namespace signsight
