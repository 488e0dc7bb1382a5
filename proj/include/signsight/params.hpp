#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace signsight {

/// How a run of recognizable viewpoints is measured: the sum of the segments
/// between them, or that sum extended by half a segment at each open end.
enum class RunLength { Segments, HalfSegmentEnds };

/// Every scalar the model consumes, in SI units (meters, seconds, m/s,
/// radians). Defaults reproduce the published parameter table.
struct ModelParams {
  // occlusion degree weights and penalty
  double alpha = 0.8;
  double beta = 0.2;
  double lambda = 6.0;
  // sight-line penalty
  double eta = 6.0;
  // recognizability weights and threshold
  double gamma = 1.0;
  double delta = 0.0;
  double sigma = 0.71;

  double standard_distance = 2.0;   ///< d^standard
  double retina_distance = 0.017;   ///< pupil-to-retina distance
  double alpha_radius = 0.1;        ///< alpha-shape radius for panel and footprint boundaries
  double eye_height = 1.2;
  double lane_width = 3.5;          ///< standard lane width used to count lanes
  double shoulder_width = 0.5;
  double mount_height = 2.0;        ///< roadside sign panel-center height
  double overhead_height = 4.75;    ///< overhead sign panel-center height
  double depression = 0.26179938779914941;   ///< 15 degrees
  double pass_angle = 0.39269908169872414;   ///< 22.5 degrees

  double v85 = 11.176;              ///< 25 mph
  double design_speed = 13.4112;    ///< 30 mph
  double reaction_time = 4.0;       ///< t^vrt

  double viewpoint_interval = 2.0;  ///< spacing of cross-sections along the road
  double band_width = 2.0;          ///< environment rectangle width beside the right outline
  double band_low = 0.3;            ///< environment band bottom above the outline
  double band_high = 3.0;           ///< environment band top above the outline
  double marking_half_height = 1.0;
  double marking_margin = 0.1;
  double solid_threshold = 30.0;    ///< clusters at least this long are solid lines
  double slice_thickness = 0.5;     ///< slab along h^sign used to anchor outlines
  double panel_exclusion = 0.05;    ///< environment points this close to the panel plane and inside it are dropped
  RunLength run_length = RunLength::Segments;

  /// Throws Error(Validation) naming the first violated constraint.
  void validate() const;

  /// Sets one field from a key and a value string; values may carry a unit
  /// tag (e.g. "25 mph", "17 mm", "15 deg"). Unitless angles are degrees.
  /// `run_length` takes "segments" or "half_segment_ends".
  void set(std::string_view key, std::string_view value);

  static const std::vector<std::string>& keys();
};

}  // namespace signsight
