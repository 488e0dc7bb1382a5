#pragma once

#include <optional>
#include <vector>

#include "signsight/geometry.hpp"

namespace signsight {

/// 3D polyline parameterised by plan-view arc length ("station").
class Polyline {
public:
  Polyline() = default;
  explicit Polyline(std::vector<Point3> points);

  const std::vector<Point3>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  double length() const { return stations_.empty() ? 0.0 : stations_.back(); }
  const std::vector<double>& stations() const { return stations_; }

  /// Point at `station`, clamped to the ends; z interpolated linearly.
  Point3 point_at(double station) const;
  /// Unit plan tangent averaged over [station - half_window, station + half_window].
  Point2 tangent_at(double station, double half_window = 1.0) const;

  struct Projection {
    double station;
    double lateral;  ///< signed plan offset, positive to the left of the direction of travel
    Point3 point;
  };
  Projection project(const Point2& p) const;

  /// Plan intersection of the line origin + t * dir with the polyline having
  /// the smallest |t| (or the smallest positive t when `forward_only`).
  std::optional<Point3> intersect_line(const Point2& origin, const Point2& dir, bool forward_only = false) const;

private:
  std::vector<Point3> points_;
  std::vector<double> stations_;
};

}  // namespace signsight
