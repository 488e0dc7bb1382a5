#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "signsight/io/keyvalue.hpp"
#include "signsight/scene.hpp"

namespace signsight::io {

/// Axis-aligned box sampled on its faces.
struct OccluderBox {
  Point3 min = Point3::Zero();
  Point3 max = Point3::Zero();
  double spacing = 0.05;
};

enum class PanelShape { Square, Circle, Triangle };

/// Scene description for the generator. World frame: the road's right edge
/// starts at the origin heading +y; a straight road keeps it on the y axis
/// with the carriageway at x < 0. Lateral offsets are positive to the right.
struct SyntheticSpec {
  std::uint64_t seed = 1;
  double noise = 0.0;      ///< Gaussian sigma added to every scanned point
  int decimals = 4;        ///< coordinates are rounded to this many decimals

  double length = 100;
  double radius = std::numeric_limits<double>::infinity();  ///< > 0 turns left, < 0 right
  double grade = 0;        ///< rise per meter of station
  int lanes = 2;
  double lane_width = 3.7;
  double standard_lane_width = 3.5;
  bool markings = true;    ///< solid edges and dashed dividers; false means auto-fallback
  double marking_width = 0.15;
  double marking_spacing = 0.1;
  double dash_length = 3.0;
  double dash_gap = 6.0;
  double ground_spacing = 0;  ///< 0 disables the ground
  double ground_margin = 3.0;
  double trajectory_spacing = 1.0;
  int trajectory_lane = 0;
  double device_height = 2.0;

  double design_speed = 13.4112;
  double v85 = 11.176;
  double reaction_time = 4.0;

  std::string sign_id = "s1";
  std::string sign_type;   ///< defaults to "<shape>_<size in mm>"
  PanelShape shape = PanelShape::Square;
  double size = 0.6;       ///< side, diameter or triangle side
  double station = 80;
  double offset = 0.5;     ///< right of the right edge (right mount) or left of it (overhead)
  double height = 2.0;     ///< panel center above the road
  SignSide side = SignSide::Right;
  double panel_spacing = 0.02;
  double yaw = 0;          ///< radians, turns the panel normal about z
  bool pole = true;
  std::optional<double> sight_distance;
  std::vector<std::pair<double, double>> sd_rows;  ///< (design speed m/s, SD m) for the library

  std::vector<OccluderBox> occluders;
  double probe_interval = 10.0;
  std::vector<std::pair<std::string, std::string>> params;  ///< passed through to the manifest
};

/// Reads the spec text format (see README). Throws Validation on
/// inconsistent specs with file:line.
SyntheticSpec parse_synthetic_spec(const Document& doc);
SyntheticSpec load_synthetic_spec(const std::filesystem::path& path);

struct TruthProbe {
  int lane = 0;
  double d_length = 0;
  Point3 viewpoint = Point3::Zero();
  bool computable = false;
  double occlusion_ratio = 0;
};

struct SyntheticScene {
  std::vector<Point3> trajectory;
  PointCloud environment;
  std::vector<PointCloud> marking_clusters;
  PointCloud panel;           ///< world pose
  PointCloud library_panel;   ///< canonical pose
  Point3 sign_center = Point3::Zero();
  Point3 sign_normal = Point3::UnitY();
  std::vector<TruthProbe> probes;
};

SyntheticScene generate_synthetic(const SyntheticSpec& spec);

/// Writes trajectory.xyz, environment.xyz, sign_<id>.xyz, markings/,
/// library/, manifest.toml and truth.toml into `dir`.
void write_synthetic(const SyntheticSpec& spec, const SyntheticScene& scene, const std::filesystem::path& dir);

/// Canonical outline of a panel shape in its (x, z) plane, counter-clockwise.
std::vector<Point2> panel_outline(PanelShape shape, double size);

/// Fraction of the panel's projection, seen from `viewpoint`, covered by the
/// projection of `box`. Empty when the box straddles the panel plane or the
/// viewpoint's plane.
std::optional<double> analytic_occlusion_ratio(const std::vector<Point3>& outline_world, const Point3& center,
                                               const OccluderBox& box, const Point3& viewpoint);

}  // namespace signsight::io
