#pragma once

#include <vector>

#include "signsight/road_segmentation.hpp"

namespace signsight {

struct LaneCount {
  int lanes = 1;
  double lane_width = 0;
  bool clamped = false;  ///< the driving width was narrower than one standard lane
};

/// Lane lines R_0 (right outline) .. R_m (left outline) and eye-height
/// viewpoint columns, one per lane. Column index j grows toward the sign;
/// the last column sits on the sign's cross-section.
struct LaneGrid {
  int lanes = 1;
  double lane_width = 0;
  std::vector<std::vector<Point3>> lines;       ///< [i][k], k = cross-section index from the sign
  std::vector<std::vector<Point3>> viewpoints;  ///< [i][j]
  std::vector<std::vector<double>> approach;    ///< [i][j] arc length along the column to the sign's cross-section
  double outline_shift = 0;  ///< added to lateral offsets; the shoulder width when outlines are synthetic

  std::size_t columns() const { return viewpoints.empty() ? 0 : viewpoints.front().size(); }
  /// Cross-section index of column j.
  std::size_t section_of(std::size_t j) const { return columns() - 1 - j; }
};

/// m = floor(width / standard lane), at least one.
LaneCount lane_count(double driving_width, double standard_lane);

/// R_i[k] = a[k] + i * w_k * (b[k] - a[k]) / |b[k] - a[k]| with the
/// cross-section's own lane width w_k = |b[k] - a[k]| / m, so R_m == b.
/// Throws DegenerateCrossSection where a[k] == b[k].
std::vector<std::vector<Point3>> dividing_lines(const ArcSampling& sampling, int lanes);

/// Lane-center viewpoints raised by `eye_height`, one column per lane.
LaneGrid viewpoints(const std::vector<std::vector<Point3>>& lane_lines, double eye_height);

}  // namespace signsight
