#include "signsight/polyline.hpp"

#include <cmath>
#include <limits>

namespace signsight {

Polyline::Polyline(std::vector<Point3> points) : points_(std::move(points)) {
  // Drop repeated plan positions; stations must be strictly increasing.
  std::vector<Point3> kept;
  kept.reserve(points_.size());
  for (const auto& p : points_) {
    if (kept.empty() || (plan(p) - plan(kept.back())).norm() > 1e-12) kept.push_back(p);
  }
  points_ = std::move(kept);
  stations_.assign(points_.size(), 0.0);
  for (std::size_t k = 1; k < points_.size(); ++k) {
    stations_[k] = stations_[k - 1] + (plan(points_[k]) - plan(points_[k - 1])).norm();
  }
}

Point3 Polyline::point_at(double station) const {
  if (points_.empty()) throw Error(ErrorKind::DegenerateStep, "empty polyline");
  if (points_.size() == 1 || station <= 0) return points_.front();
  if (station >= stations_.back()) return points_.back();
  const auto it = std::upper_bound(stations_.begin(), stations_.end(), station);
  const std::size_t hi = static_cast<std::size_t>(it - stations_.begin());
  const std::size_t lo = hi - 1;
  const double t = (station - stations_[lo]) / (stations_[hi] - stations_[lo]);
  return points_[lo] + t * (points_[hi] - points_[lo]);
}

Point2 Polyline::tangent_at(double station, double half_window) const {
  if (points_.size() < 2) throw Error(ErrorKind::DegenerateStep, "polyline needs two points for a tangent");
  double lo = std::max(0.0, station - half_window);
  double hi = std::min(length(), station + half_window);
  if (hi - lo < 1e-9) {
    lo = std::max(0.0, hi - 2 * half_window);
    hi = std::min(length(), lo + 2 * half_window);
  }
  const Point2 d = plan(point_at(hi)) - plan(point_at(lo));
  if (d.norm() < 1e-12) throw Error(ErrorKind::DegenerateStep, "zero tangent");
  return d.normalized();
}

Polyline::Projection Polyline::project(const Point2& p) const {
  if (points_.empty()) throw Error(ErrorKind::DegenerateStep, "empty polyline");
  if (points_.size() == 1) return {0.0, 0.0, points_.front()};
  Projection best{0, 0, points_.front()};
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
    const Point2 a = plan(points_[k]);
    const Point2 ab = plan(points_[k + 1]) - a;
    const double len2 = ab.squaredNorm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    const Point2 q = a + t * ab;
    const double d = (p - q).squaredNorm();
    if (d < best_d) {
      best_d = d;
      const double len = std::sqrt(len2);
      best.station = stations_[k] + t * len;
      best.lateral = cross2(ab / len, p - a);
      best.point = points_[k] + t * (points_[k + 1] - points_[k]);
    }
  }
  return best;
}

std::optional<Point3> Polyline::intersect_line(const Point2& origin, const Point2& dir, bool forward_only) const {
  std::optional<Point3> best;
  double best_t = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
    const Point2 a = plan(points_[k]);
    const Point2 e = plan(points_[k + 1]) - a;
    const double denom = cross2(dir, e);
    if (std::abs(denom) < 1e-15) continue;
    const Point2 w = a - origin;
    const double t = cross2(w, e) / denom;    // along the line
    const double u = cross2(w, dir) / denom;  // along the segment
    if (u < -1e-12 || u > 1 + 1e-12) continue;
    if (forward_only && t < 0) continue;
    if (std::abs(t) < best_t) {
      best_t = std::abs(t);
      const double uc = std::clamp(u, 0.0, 1.0);
      best = points_[k] + uc * (points_[k + 1] - points_[k]);
    }
  }
  return best;
}

}  // namespace signsight
