#include "signsight/viewpoints.hpp"

#include <cmath>

namespace signsight {

LaneCount lane_count(double driving_width, double standard_lane) {
  if (!(driving_width > 0) || !(standard_lane > 0)) {
    throw Error(ErrorKind::Validation, "lane_count needs positive widths");
  }
  LaneCount out;
  // Tolerate widths a hair under an exact multiple of the standard lane.
  out.lanes = static_cast<int>(std::floor(driving_width / standard_lane + 1e-9));
  if (out.lanes < 1) {
    out.lanes = 1;
    out.clamped = true;
  }
  out.lane_width = driving_width / out.lanes;
  return out;
}

std::vector<std::vector<Point3>> dividing_lines(const ArcSampling& sampling, int lanes) {
  if (lanes < 1) throw Error(ErrorKind::Validation, "at least one lane required");
  std::vector<std::vector<Point3>> lines(static_cast<std::size_t>(lanes) + 1);
  for (auto& l : lines) l.reserve(sampling.size());
  for (std::size_t k = 0; k < sampling.size(); ++k) {
    const Point3& a = sampling.right[k];
    const Point3& b = sampling.left[k];
    const double width = (b - a).norm();
    if (width < 1e-9) {
      throw Error(ErrorKind::DegenerateCrossSection, "outlines meet at cross-section " + std::to_string(k));
    }
    const Point3 h = (b - a) / width;
    const double lane_width = width / lanes;
    lines[0].push_back(a);
    for (int i = 1; i < lanes; ++i) lines[i].push_back(a + (i * lane_width) * h);
    lines[lanes].push_back(b);
  }
  return lines;
}

LaneGrid viewpoints(const std::vector<std::vector<Point3>>& lane_lines, double eye_height) {
  if (lane_lines.size() < 2) throw Error(ErrorKind::Validation, "need at least two lane lines");
  LaneGrid grid;
  grid.lanes = static_cast<int>(lane_lines.size()) - 1;
  grid.lines = lane_lines;
  const std::size_t sections = lane_lines.front().size();
  if (sections > 0) {
    grid.lane_width = (plan(lane_lines.back().front()) - plan(lane_lines.front().front())).norm() / grid.lanes;
  }
  const Point3 lift(0, 0, eye_height);
  grid.viewpoints.resize(grid.lanes);
  grid.approach.resize(grid.lanes);
  for (int i = 0; i < grid.lanes; ++i) {
    auto& column = grid.viewpoints[i];
    column.resize(sections);
    for (std::size_t j = 0; j < sections; ++j) {
      const std::size_t k = sections - 1 - j;
      column[j] = 0.5 * (lane_lines[i][k] + lane_lines[i + 1][k]) + lift;
    }
    auto& approach = grid.approach[i];
    approach.assign(sections, 0.0);
    for (std::size_t j = sections; j-- > 1;) approach[j - 1] = approach[j] + (column[j] - column[j - 1]).norm();
  }
  return grid;
}

}  // namespace signsight
