#pragma once

#include <span>
#include <vector>

#include "signsight/params.hpp"

namespace signsight {

struct RecognizabilityRecord {
  int lane = 0;
  int column = 0;
  double ratio = 0;          ///< E^visibility / E^visibilityI, may exceed 1
  bool recognizable = false;
  bool degenerate = false;   ///< ideal visibility was 0
};

/// One viewpoint of a lane column: approach arc position and its bit.
struct ColumnSample {
  double position = 0;
  bool recognizable = false;
};

struct LaneVerdict {
  int lane = 0;
  double max_cog_length = 0;
  double vrd = 0;
  bool timely = false;
};

/// 1{gamma * actual / ideal + delta * other > sigma}; an ideal of 0 gives a
/// degenerate, unrecognizable record.
RecognizabilityRecord viewpoint_recognizability(double actual, double ideal, const ModelParams& params,
                                                double other = 0.0);

/// Longest run of consecutive recognizable samples, measured per `rule`.
/// Samples must be ordered by position.
double max_continuous_length(std::span<const ColumnSample> column, RunLength rule = RunLength::Segments);

/// v85 * t_vrt. Throws Validation for non-positive inputs.
double vrd(double v85, double reaction_time);

/// Timely when the longest recognizable run reaches the reaction distance.
LaneVerdict lane_verdict(std::span<const ColumnSample> column, const ModelParams& params, int lane = 0);

}  // namespace signsight
