#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "signsight/geometry.hpp"
#include "signsight/params.hpp"

namespace signsight {

struct PointCloud {
  std::vector<Point3> points;
  std::vector<double> intensity;  ///< empty, or one value per point

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_intensity() const { return !intensity.empty(); }
};

/// Vehicle path samples in driving order.
class Trajectory {
public:
  Trajectory() = default;
  /// Throws Validation for fewer than two points or a zero-length step.
  explicit Trajectory(std::vector<Point3> points);

  const std::vector<Point3>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Point3& operator[](std::size_t i) const { return points_[i]; }

  /// Index of the sample nearest to `p` in plan view.
  std::size_t nearest_plan_index(const Point3& p) const;
  /// Plan-view driving direction around sample k (central difference).
  Point2 plan_direction(std::size_t k) const;
  /// Cumulative plan arc length at each sample.
  const std::vector<double>& stations() const { return stations_; }
  double length() const { return stations_.back(); }

private:
  std::vector<Point3> points_;
  std::vector<double> stations_;
};

enum class SignSide { Right, Overhead };

const char* to_string(SignSide side);
SignSide parse_sign_side(std::string_view text);

struct SignInstance {
  std::string id;
  std::string type;
  PointCloud panel;
  Point3 center = Point3::Zero();  ///< panel centroid
  Point3 normal = Point3::UnitY(); ///< least-squares panel normal facing the road
  double sight_distance = 60.0;
  SignSide side = SignSide::Right;
};

enum class MarkingKind { Solid, Dashed, Unknown };

struct MarkingCluster {
  PointCloud cloud;
  MarkingKind kind = MarkingKind::Unknown;
  double length = 0;  ///< extent along the road, meters
};

struct SignLibraryEntry {
  std::string type;
  PointCloud panel;               ///< centered at the origin, normal along +y
  double standard_area = 0;       ///< retinal area at the standard pose, m^2
  /// (design speed m/s, sight distance m) rows, ascending in speed
  std::vector<std::pair<double, double>> sight_distance_by_speed;

  /// Sight distance for the row whose design speed is closest to `speed`.
  std::optional<double> sight_distance_for(double speed) const;
};

using SignLibrary = std::map<std::string, SignLibraryEntry>;

struct PlaneFit {
  Point3 center;
  Point3 normal;
  double rms;
};

/// Least-squares plane through the panel. The normal is flipped to face
/// `toward` when given. Throws DegeneratePanel for fewer than three points
/// or a collinear cloud.
PlaneFit plane_fit_center(const PointCloud& panel, const std::optional<Point3>& toward = std::nullopt);

/// Re-centers the panel at its centroid and turns its normal onto +y.
PointCloud canonicalize_panel(const PointCloud& panel);

/// Retinal area of a canonical panel (centroid at the origin, normal +y)
/// seen frontally from the standard distance on its normal.
double standard_area(const PointCloud& canonical_panel, const ModelParams& params);

/// Panel-center RMS plane residual a sign panel must stay under.
constexpr double kMaxPanelRms = 0.05;

}  // namespace signsight
