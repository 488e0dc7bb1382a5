#include "signsight/visibility.hpp"

#include <algorithm>
#include <cmath>

#include "signsight/alpha_shape.hpp"
#include "signsight/units.hpp"

namespace signsight {

ViewFrame build_view_frame(const SignInstance& sign, EnvironmentView env, const Point3& viewpoint,
                           const ModelParams& params) {
  ViewFrame frame;
  frame.transform = view_transform(sign.center, viewpoint);
  frame.viewpoint = viewpoint;
  frame.front_facing = sign.normal.dot(viewpoint - sign.center) > 0;
  frame.environment = env;
  frame.panel = project_to_view_plane(sign.panel.points, frame.transform);
  try {
    frame.boundary = alpha_shape_boundary(frame.panel, params.alpha_radius);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegeneratePolygon) throw;
    throw Error(ErrorKind::SignBoundary, "sign " + sign.id + ": no panel boundary from this viewpoint (" +
                                             e.what() + ")");
  }
  for (const Point2& v : frame.boundary.vertices()) frame.d_max = std::max(frame.d_max, v.norm());
  frame.cone_half_angle = std::atan(frame.d_max / frame.distance());
  return frame;
}

GeometricFactor geometric_factor(const ViewFrame& frame, const SignLibraryEntry& entry, const ModelParams& params) {
  if (!(entry.standard_area > 0)) {
    throw Error(ErrorKind::Validation, "sign type " + entry.type + " has no positive standard area");
  }
  GeometricFactor out;
  const double area = retinal_area(frame.boundary, frame.distance(), params.retina_distance);
  if (!frame.front_facing) return out;
  out.a_view = area;
  out.e_geo = area / entry.standard_area;
  return out;
}

OcclusionResult extract_occlusion(const ViewFrame& frame, const ModelParams& params) {
  OcclusionResult out;
  const auto& env = frame.environment;
  if (env.points.empty()) return out;

  const double D = frame.distance();
  const Point3 eye = frame.transform.eye();
  const double cos_phi = D / std::hypot(D, frame.d_max);

  auto test = [&](std::size_t idx) {
    const Point3 p = frame.transform.apply(env.points[idx]);
    const Point3 g = p - eye;
    const double len = g.norm();
    if (!(len > 0)) return;
    if (-g.z() / len < cos_phi - 1e-12) return;
    if (!(p.z() > 0 && p.z() < D)) return;
    const Point2 foot = ray_plane_xy_intersection<double>(eye, p);
    if (!point_in_polygon(foot, frame.boundary)) return;
    out.occluders.push_back(idx);
  };

  if (env.grid) {
    const Point2 c = plan(frame.transform.center);
    const Point2 v = plan(frame.viewpoint);
    const Point2 pad = Point2::Constant(frame.d_max);
    env.grid->for_each_in_box(c.cwiseMin(v) - pad, c.cwiseMax(v) + pad, test);
    std::sort(out.occluders.begin(), out.occluders.end());
  } else {
    for (std::size_t i = 0; i < env.points.size(); ++i) test(i);
  }

  out.footprints.reserve(out.occluders.size());
  for (std::size_t idx : out.occluders) {
    out.footprints.push_back(ray_plane_xy_intersection<double>(eye, frame.transform.apply(env.points[idx])));
  }
  if (out.footprints.size() < 3) return out;

  std::vector<Polygon2d> regions;
  try {
    regions = alpha_shape_components(out.footprints, params.alpha_radius);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegeneratePolygon) throw;
    return out;
  }
  double plane_area = 0;
  Point2 moment = Point2::Zero();
  for (const auto& region : regions) {
    const double a = polygon_area(region);
    plane_area += a;
    moment += a * polygon_centroid(region);
    out.area += retinal_area(region, D, params.retina_distance);
  }
  if (plane_area > 0) {
    out.centroid = moment / plane_area;
    out.distribution = frame.d_max > 0 ? std::clamp(1.0 - out.centroid.norm() / frame.d_max, 0.0, 1.0) : 0.0;
  }
  return out;
}

OcclusionFactor occlusion_factor(const OcclusionResult& occ, double a_view, const ModelParams& params) {
  OcclusionFactor out;
  if (!(a_view > 0) || !(occ.area > 0)) return out;
  double a_occ = occ.area;
  if (a_occ > a_view) {
    a_occ = a_view;
    out.clamped = true;
  }
  out.ratio = a_occ / a_view;
  const double distribution = std::clamp(occ.distribution, 0.0, 1.0);
  out.e_od = params.alpha * out.ratio + params.beta * distribution * out.ratio;
  out.e_occ = std::exp(-params.lambda * out.e_od);
  return out;
}

double gfov(double speed) {
  if (!(speed > 0)) throw Error(ErrorKind::Validation, "speed must be positive");
  const double deg = std::clamp(85.0 - (to_mph(speed) - 30.0), 10.0, 170.0);
  return deg_to_rad(deg);
}

double sight_line_factor(double v_a, double v_f, double eta) {
  const double half = 0.5 * v_f;
  if (v_a < half) return 1.0;
  if (v_a <= kPi / 2) return std::exp(-eta * (v_a - half) / half);
  return 0.0;
}

double sight_deviation_angle(const LaneGrid& grid, int lane, int column, const Point3& sign_center) {
  const auto& col = grid.viewpoints.at(static_cast<std::size_t>(lane));
  const auto j = static_cast<std::size_t>(column);
  if (j >= col.size()) throw Error(ErrorKind::Validation, "viewpoint column out of range");
  if (col.size() < 2) throw Error(ErrorKind::DegenerateStep, "a single viewpoint has no travel direction");
  const Point3 travel = j + 1 < col.size() ? Point3(col[j + 1] - col[j]) : Point3(col[j] - col[j - 1]);
  const Point3 sight = sign_center - col[j];
  if (!(travel.norm() > 0) || !(sight.norm() > 0)) {
    throw Error(ErrorKind::DegenerateStep, "zero-length travel or sight vector");
  }
  return angle_between(travel, sight);
}

double lateral_offset(const LaneGrid& grid, int lane, int column) {
  const std::size_t k = grid.section_of(static_cast<std::size_t>(column));
  const Point3& vp = grid.viewpoints.at(static_cast<std::size_t>(lane)).at(static_cast<std::size_t>(column));
  return (plan(vp) - plan(grid.lines.front().at(k))).norm() + grid.outline_shift;
}

VisibilityRecord viewpoint_visibility(const ViewFrame& frame, const LaneGrid& grid, int lane, int column,
                                      const ModelParams& params, const SignLibraryEntry& entry,
                                      const Point3& sign_center) {
  VisibilityRecord rec;
  rec.lane = lane;
  rec.column = column;
  rec.viewpoint = frame.viewpoint;
  rec.d_length = grid.approach.at(static_cast<std::size_t>(lane)).at(static_cast<std::size_t>(column));
  rec.d_width = lateral_offset(grid, lane, column);

  const GeometricFactor geo = geometric_factor(frame, entry, params);
  rec.e_geo = geo.e_geo;
  rec.a_view = geo.a_view;

  if (geo.a_view > 0) {
    const OcclusionResult occ = extract_occlusion(frame, params);
    const OcclusionFactor of = occlusion_factor(occ, geo.a_view, params);
    rec.a_occ = std::min(occ.area, geo.a_view);
    rec.occlusion_ratio = of.ratio;
    rec.distribution = of.ratio > 0 ? occ.distribution : 0.0;
    rec.e_od = of.e_od;
    rec.e_occ = of.e_occ;
  }

  rec.sight_angle = sight_deviation_angle(grid, lane, column, sign_center);
  rec.e_sight = sight_line_factor(rec.sight_angle, gfov(params.v85), params.eta);
  rec.e_visibility = rec.e_geo * rec.e_occ * rec.e_sight;
  return rec;
}

}  // namespace signsight
