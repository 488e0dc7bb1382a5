#include "signsight/recognizability.hpp"

#include <algorithm>
#include <cmath>

#include "signsight/errors.hpp"

namespace signsight {

RecognizabilityRecord viewpoint_recognizability(double actual, double ideal, const ModelParams& params,
                                                double other) {
  RecognizabilityRecord rec;
  if (!(ideal > 0)) {
    rec.degenerate = true;
    return rec;
  }
  rec.ratio = actual / ideal;
  rec.recognizable = params.gamma * rec.ratio + params.delta * other > params.sigma;
  return rec;
}

double max_continuous_length(std::span<const ColumnSample> column, RunLength rule) {
  const std::size_t n = column.size();
  auto gap = [&](std::size_t k) { return std::abs(column[k + 1].position - column[k].position); };
  double best = 0;
  std::size_t k = 0;
  while (k < n) {
    if (!column[k].recognizable) {
      ++k;
      continue;
    }
    const std::size_t start = k;
    double run = 0;
    while (k + 1 < n && column[k + 1].recognizable) {
      run += gap(k);
      ++k;
    }
    if (rule == RunLength::HalfSegmentEnds) {
      if (start > 0) run += 0.5 * gap(start - 1);
      if (k + 1 < n) run += 0.5 * gap(k);
    }
    best = std::max(best, run);
    ++k;
  }
  return best;
}

double vrd(double v85, double reaction_time) {
  if (!(v85 > 0) || !(reaction_time > 0)) {
    throw Error(ErrorKind::Validation, "v85 and reaction time must be > 0");
  }
  return v85 * reaction_time;
}

LaneVerdict lane_verdict(std::span<const ColumnSample> column, const ModelParams& params, int lane) {
  LaneVerdict v;
  v.lane = lane;
  v.max_cog_length = max_continuous_length(column, params.run_length);
  v.vrd = vrd(params.v85, params.reaction_time);
  v.timely = v.max_cog_length >= v.vrd;
  return v;
}

}  // namespace signsight
