#include "signsight/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace signsight {

std::size_t EvaluationResult::failures() const {
  return static_cast<std::size_t>(std::count_if(signs.begin(), signs.end(), [](const auto& s) { return !s.ok; }));
}

void locate_sign(SignInstance& sign, const Trajectory& trajectory) {
  const PlaneFit rough = plane_fit_center(sign.panel);
  const std::size_t k = trajectory.nearest_plan_index(rough.center);
  const auto& st = trajectory.stations();
  const double target = st[k] - 0.5 * sign.sight_distance;
  std::size_t m = k;
  while (m > 0 && st[m] > target) --m;
  Point3 toward = trajectory[m];
  if (m == k) {
    // The sign stands at the start of the path; face the first sample's upstream side.
    const Point2 d = trajectory.plan_direction(k);
    toward = trajectory[k] - Point3(d.x(), d.y(), 0) * std::max(1.0, 0.5 * sign.sight_distance);
  }
  const PlaneFit fit = plane_fit_center(sign.panel, toward);
  sign.center = fit.center;
  sign.normal = fit.normal;
}

PointCloud exclude_panel(const PointCloud& environment, const SignInstance& sign, const ModelParams& params) {
  double radius = 0;
  for (const auto& p : sign.panel.points) radius = std::max(radius, (p - sign.center).norm());
  radius += params.alpha_radius;
  PointCloud out;
  out.points.reserve(environment.size());
  for (std::size_t i = 0; i < environment.size(); ++i) {
    const Point3 d = environment.points[i] - sign.center;
    const double off_plane = std::abs(d.dot(sign.normal));
    const double in_plane = (d - d.dot(sign.normal) * sign.normal).norm();
    if (off_plane <= params.panel_exclusion && in_plane <= radius) continue;
    out.points.push_back(environment.points[i]);
    if (environment.has_intensity()) out.intensity.push_back(environment.intensity[i]);
  }
  return out;
}

namespace {

OutlinePair find_outlines(const Scene& scene, const SignInstance& sign, SignReport& report) {
  const ModelParams& params = scene.params;
  const Point3 heading = sign_heading(sign, scene.trajectory);
  if (!scene.auto_fallback) {
    std::vector<MarkingCluster> solids;
    for (auto& c : classify_markings(scene.markings, params.solid_threshold)) {
      if (c.kind == MarkingKind::Solid) solids.push_back(std::move(c));
    }
    try {
      return select_outlines(solids, scene.trajectory, sign, params);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::FallbackRequired) throw;
      report.warnings.push_back(std::string("outlines from trajectory: ") + e.what());
    }
  }
  OutlinePair outlines =
      fallback_outlines(scene.trajectory, scene.road.device_height, scene.road.fallback_half_width);
  attach_anchors(outlines, sign.center, heading);
  return outlines;
}

ViewpointResult evaluate_viewpoint(const SignInstance& sign, const EnvironmentView& env, const LaneGrid& grid,
                                   int lane, int column, const ModelParams& params, const SignLibraryEntry& entry,
                                   const IdealScene& ideal) {
  ViewpointResult out;
  const Point3& vp = grid.viewpoints[lane][column];
  try {
    const ViewFrame frame = build_view_frame(sign, env, vp, params);
    out.actual = viewpoint_visibility(frame, grid, lane, column, params, entry, sign.center);
  } catch (const Error&) {
    VisibilityRecord& rec = out.actual;
    rec = VisibilityRecord{};
    rec.lane = lane;
    rec.column = column;
    rec.viewpoint = vp;
    rec.d_length = grid.approach[lane][column];
    rec.d_width = lateral_offset(grid, lane, column);
    rec.degenerate = true;
  }
  out.ideal_viewpoint = corresponding_viewpoint(out.actual, params);
  try {
    out.ideal = ideal_visibility(ideal, out.ideal_viewpoint, entry, params);
  } catch (const Error&) {
    out.ideal = IdealVisibility{};
  }
  out.recognizability = viewpoint_recognizability(out.actual.e_visibility, out.ideal.e_visibility, params);
  out.recognizability.lane = lane;
  out.recognizability.column = column;
  return out;
}

}  // namespace

SignReport evaluate_sign(const Scene& scene, const SignInstance& sign) {
  const ModelParams& params = scene.params;
  SignReport report;
  report.id = sign.id;
  report.type = sign.type;
  report.side = to_string(sign.side);
  report.sight_distance = sign.sight_distance;

  const auto it = scene.library.find(sign.type);
  if (it == scene.library.end()) throw Error(ErrorKind::UnknownSignType, "unknown sign type '" + sign.type + "'");
  const SignLibraryEntry& entry = it->second;

  const OutlinePair outlines = find_outlines(scene, sign, report);
  report.fallback_outlines_used = outlines.fallback;
  report.driving_width = outlines.driving_width;

  const ArcSampling sampling = build_arc_sampling(outlines, sign.sight_distance, params.viewpoint_interval);
  report.short_field = sampling.short_field;
  report.sampled_length = sampling.length();
  if (sampling.short_field) report.warnings.push_back("outlines end before the sight distance");

  const SegmentedScene segmented = sweep_segment(scene.environment, sampling, params);
  const PointCloud environment = exclude_panel(segmented.environment, sign, params);
  report.environment_points = environment.size();
  report.marking_points = segmented.markings.size();

  const LaneCount count = lane_count(outlines.driving_width, params.lane_width);
  if (count.clamped) report.warnings.push_back("driving width below one standard lane; using one lane");
  LaneGrid grid = viewpoints(dividing_lines(sampling, count.lanes), params.eye_height);
  grid.outline_shift = outlines.fallback ? params.shoulder_width : 0.0;
  report.lane_width = count.lane_width;

  std::optional<double> d_sign;
  if (sign.side == SignSide::Overhead) {
    d_sign = (plan(sign.center) - plan(outlines.right_anchor)).norm() + grid.outline_shift;
  }
  const IdealScene ideal = build_ideal_scene(entry, params, sign.side, d_sign);

  const SpatialGrid2D index(environment.points, 1.0);
  const EnvironmentView env{environment.points, &index};

  const double reaction = vrd(params.v85, params.reaction_time);
  report.vrd_exceeds_sight_distance = reaction > sign.sight_distance;

  for (int i = 0; i < grid.lanes; ++i) {
    LaneReport lane;
    lane.lane = i;
    const int columns = static_cast<int>(grid.columns());
    for (int j = columns - 1; j >= 0; --j) {
      lane.viewpoints.push_back(evaluate_viewpoint(sign, env, grid, i, j, params, entry, ideal));
    }
    std::vector<ColumnSample> samples;
    samples.reserve(lane.viewpoints.size());
    for (const auto& v : lane.viewpoints) samples.push_back({v.actual.d_length, v.recognizability.recognizable});
    lane.verdict = lane_verdict(samples, params, i);
    report.lanes.push_back(std::move(lane));
  }
  report.ok = true;
  return report;
}

EvaluationResult evaluate(const Scene& scene, unsigned jobs) {
  std::vector<const SignInstance*> order;
  for (const auto& s : scene.signs) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

  EvaluationResult result;
  result.signs.resize(order.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) {
      try {
        result.signs[k] = evaluate_sign(scene, *order[k]);
      } catch (const std::exception& e) {
        SignReport failed;
        failed.id = order[k]->id;
        failed.type = order[k]->type;
        failed.side = to_string(order[k]->side);
        failed.sight_distance = order[k]->sight_distance;
        failed.error = e.what();
        result.signs[k] = std::move(failed);
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(order.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return result;
}

}  // namespace signsight
