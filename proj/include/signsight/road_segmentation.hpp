#pragma once

#include <array>
#include <vector>

#include "signsight/params.hpp"
#include "signsight/polyline.hpp"
#include "signsight/scene.hpp"

namespace signsight {

/// Right and left borders of the forward driving region, both ordered in
/// the driving direction, with the anchors where the sign's cross-section
/// meets them.
struct OutlinePair {
  Polyline right;
  Polyline left;
  Point3 right_anchor = Point3::Zero();
  Point3 left_anchor = Point3::Zero();
  double driving_width = 0;  ///< plan distance between the anchors
  bool fallback = false;
};

/// Right-outline samples a[], left-outline samples b[] and their midpoints
/// m[], starting at the sign's cross-section and stepping against the
/// driving direction.
struct ArcSampling {
  std::vector<Point3> right;
  std::vector<Point3> left;
  std::vector<Point3> mid;
  std::vector<double> cumulative;  ///< arc length of mid[] up to each sample
  bool short_field = false;        ///< outlines ran out before the sight distance

  std::size_t size() const { return mid.size(); }
  double length() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

struct SegmentedScene {
  PointCloud environment;
  PointCloud markings;
  std::vector<std::size_t> environment_indices;  ///< into the source cloud, ascending
  std::vector<std::size_t> marking_indices;
};

struct SegmentationRects {
  std::array<Point3, 4> environment;
  std::array<Point3, 4> marking;
  Point3 across;  ///< h^{kk+1}: horizontal unit vector perpendicular to the step
};

/// Unit vector from the panel center to the plan-nearest trajectory sample.
/// Throws DegenerateHeading when the two coincide.
Point3 sign_heading(const SignInstance& sign, const Trajectory& traj);

/// Extent of a cluster along the trajectory, in meters of station.
double marking_length(const PointCloud& cluster, const Trajectory& traj);

/// Labels clusters solid when their length reaches `threshold` (inclusive).
std::vector<MarkingCluster> classify_markings(std::vector<MarkingCluster> clusters, double threshold = 30.0);

/// Completed polyline for one marking line: per-meter station bins of the
/// cluster, with empty bins filled by offsetting the trajectory at the
/// cluster's median lateral and vertical offsets. Spans the whole trajectory.
Polyline complete_marking_line(const PointCloud& cluster, const Trajectory& traj);

/// Picks the farthest solid line right of the trajectory and the nearest one
/// on its left, anchored where the sign's cross-section meets them. Throws
/// FallbackRequired when either side has no solid line.
OutlinePair select_outlines(const std::vector<MarkingCluster>& solids, const Trajectory& traj,
                            const SignInstance& sign, const ModelParams& params);

/// Outlines from the trajectory shifted by +/- half_width in plan and lowered
/// by the scanner height. Anchors are left at the first samples; see
/// attach_anchors.
OutlinePair fallback_outlines(const Trajectory& traj, double device_height, double half_width);

/// Sets the anchors to where the plan line through `center` along `heading`
/// crosses each outline, falling back to the nearest outline point.
void attach_anchors(OutlinePair& outlines, const Point3& center, const Point3& heading);

/// Samples the outlines from their anchors back along the road so that the
/// midpoints are `interval` apart, trimming the last step so the midpoint
/// arc length is exactly `sight_distance`.
ArcSampling build_arc_sampling(const OutlinePair& outlines, double sight_distance, double interval);

/// Environment and marking rectangles standing on `a_k`, oriented by the
/// step from `a_k` to `a_k1`. Throws DegenerateStep for a vertical step.
SegmentationRects segmentation_rectangles(const Point3& a_k, const Point3& a_k1, const ModelParams& params,
                                          double driving_width);

/// Points inside the volumes swept between consecutive rectangles along the
/// right outline. Steps are taken in driving order so the environment band
/// lies beside the road and the marking band across it.
SegmentedScene sweep_segment(const PointCloud& cloud, const ArcSampling& sampling, const ModelParams& params);

}  // namespace signsight
