#pragma once

#include <optional>
#include <string>
#include <vector>

#include "signsight/ideal_environment.hpp"
#include "signsight/recognizability.hpp"
#include "signsight/road_segmentation.hpp"
#include "signsight/visibility.hpp"

namespace signsight {

/// Road-level settings that are not model parameters.
struct RoadSettings {
  double device_height = 2.0;        ///< scanner height above the road, for synthetic outlines
  double fallback_half_width = 3.5;  ///< half the driving width used for synthetic outlines
};

/// A fully loaded and validated scene.
struct Scene {
  Trajectory trajectory;
  PointCloud environment;
  std::vector<MarkingCluster> markings;
  bool auto_fallback = false;  ///< no markings supplied; outlines come from the trajectory
  std::vector<SignInstance> signs;
  SignLibrary library;
  ModelParams params;
  RoadSettings road;
};

struct ViewpointResult {
  VisibilityRecord actual;
  IdealVisibility ideal;
  Point3 ideal_viewpoint = Point3::Zero();
  RecognizabilityRecord recognizability;
};

struct LaneReport {
  int lane = 0;
  std::vector<ViewpointResult> viewpoints;  ///< ordered by increasing approach arc length
  LaneVerdict verdict;
};

struct SignReport {
  std::string id;
  std::string type;
  std::string side;
  bool ok = false;
  std::string error;  ///< set when !ok
  double sight_distance = 0;
  double sampled_length = 0;
  double driving_width = 0;
  double lane_width = 0;
  std::size_t environment_points = 0;
  std::size_t marking_points = 0;
  bool short_field = false;
  bool vrd_exceeds_sight_distance = false;
  bool fallback_outlines_used = false;
  std::vector<std::string> warnings;
  std::vector<LaneReport> lanes;
};

struct EvaluationResult {
  std::vector<SignReport> signs;  ///< sorted by sign id

  std::size_t failures() const;
};

/// Fits the panel plane, orients its normal toward approaching traffic (the
/// trajectory about half a sight distance before the sign) and fills center
/// and normal.
void locate_sign(SignInstance& sign, const Trajectory& trajectory);

/// Environment points within `params.panel_exclusion` of the panel plane and
/// inside the panel's radius are removed, so the panel never occludes itself.
PointCloud exclude_panel(const PointCloud& environment, const SignInstance& sign, const ModelParams& params);

/// Runs segmentation, viewpoints, visibility, the ideal scene and
/// recognizability for one sign. Throws on failures that stop the sign.
SignReport evaluate_sign(const Scene& scene, const SignInstance& sign);

/// Evaluates every sign, up to `jobs` at a time. Per-sign failures are
/// recorded in the reports rather than thrown.
EvaluationResult evaluate(const Scene& scene, unsigned jobs = 1);

}  // namespace signsight
