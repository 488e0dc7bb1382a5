#pragma once

#include <span>
#include <vector>

#include "signsight/scene.hpp"
#include "signsight/spatial_grid.hpp"
#include "signsight/view.hpp"
#include "signsight/viewpoints.hpp"

namespace signsight {

/// Environment points with an optional plan-view index. Without a grid every
/// point is tested.
struct EnvironmentView {
  std::span<const Point3> points;
  const SpatialGrid2D* grid = nullptr;
};

/// Observation frame for one viewpoint: panel center at the origin, the
/// viewpoint on +z.
struct ViewFrame {
  ViewTransform transform;
  Point3 viewpoint = Point3::Zero();       ///< world coordinates
  std::vector<Point2> panel;               ///< panel points projected into the panel plane
  Polygon2d boundary;                      ///< e^polygon
  double d_max = 0;                        ///< largest center-to-boundary-vertex distance
  double cone_half_angle = 0;              ///< arctan(d_max / distance)
  bool front_facing = true;                ///< viewpoint on the side the panel faces
  EnvironmentView environment;

  double distance() const { return transform.distance; }
};

struct OcclusionResult {
  double area = 0;                          ///< A^occ, retinal m^2
  std::vector<std::size_t> occluders;       ///< indices into the environment, ascending
  std::vector<Point2> footprints;           ///< panel-plane intersections, same order
  Point2 centroid = Point2::Zero();         ///< c^occ
  double distribution = 0;                  ///< 1 - |c^occ| / d_max, 0 without occlusion
};

struct GeometricFactor {
  double e_geo = 0;
  double a_view = 0;
};

struct OcclusionFactor {
  double e_od = 0;
  double e_occ = 1;
  double ratio = 0;      ///< A^occ / A^view after clamping
  bool clamped = false;  ///< A^occ exceeded A^view
};

struct VisibilityRecord {
  int lane = 0;
  int column = 0;
  Point3 viewpoint = Point3::Zero();
  double e_geo = 0;
  double e_occ = 1;
  double e_sight = 0;
  double e_visibility = 0;
  double a_view = 0;
  double a_occ = 0;
  double occlusion_ratio = 0;
  double distribution = 0;
  double e_od = 0;
  double sight_angle = 0;   ///< V^a, radians
  double d_length = 0;      ///< approach arc length to the sign's cross-section
  double d_width = 0;       ///< plan offset from the right outline
  bool degenerate = false;  ///< a sub-factor could not be computed; E values are 0
};

/// Throws SignBoundary when the projected panel has no alpha-shape boundary
/// and DegenerateStep when the viewpoint sits on the panel center.
ViewFrame build_view_frame(const SignInstance& sign, EnvironmentView env, const Point3& viewpoint,
                           const ModelParams& params);

/// A^view is the retinal area of the boundary; a viewpoint behind the panel
/// sees nothing. Throws BehindPupil closer than the retina distance.
GeometricFactor geometric_factor(const ViewFrame& frame, const SignLibraryEntry& entry, const ModelParams& params);

/// Environment points in the view cone, between the viewpoint and the panel
/// plane, whose footprint falls inside the boundary.
OcclusionResult extract_occlusion(const ViewFrame& frame, const ModelParams& params);

/// E^od = (alpha + beta * distribution) * ratio, E^occ = exp(-lambda * E^od).
OcclusionFactor occlusion_factor(const OcclusionResult& occ, double a_view, const ModelParams& params);

/// Geometric field of view for a speed in m/s: 85 deg at 30 mph, one degree
/// narrower per mph, clamped to [10, 170] deg. Returns radians.
double gfov(double speed);

double sight_line_factor(double v_a, double v_f, double eta);

/// Angle between the lane's travel direction at column j and the line from
/// the viewpoint to the sign center. Throws DegenerateStep for a zero-length
/// direction.
double sight_deviation_angle(const LaneGrid& grid, int lane, int column, const Point3& sign_center);

/// Full E^visibility for one viewpoint; `frame` must be built at that viewpoint.
VisibilityRecord viewpoint_visibility(const ViewFrame& frame, const LaneGrid& grid, int lane, int column,
                                      const ModelParams& params, const SignLibraryEntry& entry,
                                      const Point3& sign_center);

/// Plan offset of a viewpoint from the right outline of its cross-section.
double lateral_offset(const LaneGrid& grid, int lane, int column);

}  // namespace signsight
