#include "signsight/road_segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "signsight/spatial_grid.hpp"

namespace signsight {
namespace {

Point2 right_normal(const Point2& dir) { return Point2(dir.y(), -dir.x()); }
Point2 left_normal(const Point2& dir) { return Point2(-dir.y(), dir.x()); }

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  return m;
}

Polyline trajectory_polyline(const Trajectory& traj) { return Polyline(traj.points()); }

// Plan direction used for the outline search: the horizontal part of the
// heading, or the trajectory's right normal when the heading is near vertical.
Point2 plan_heading(const Point3& heading, const Point2& traj_dir) {
  const Point2 hp = plan(heading);
  if (hp.norm() < 1e-6) return right_normal(traj_dir).normalized();
  return hp.normalized();
}

}  // namespace

Point3 sign_heading(const SignInstance& sign, const Trajectory& traj) {
  if (traj.size() == 0) throw Error(ErrorKind::Validation, "empty trajectory");
  const Point3 d = traj[traj.nearest_plan_index(sign.center)] - sign.center;
  if (d.norm() < 1e-12) throw Error(ErrorKind::DegenerateHeading, "sign center coincides with the trajectory");
  return d.normalized();
}

double marking_length(const PointCloud& cluster, const Trajectory& traj) {
  if (cluster.empty()) return 0.0;
  const Polyline path = trajectory_polyline(traj);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : cluster.points) {
    const double s = path.project(plan(p)).station;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

std::vector<MarkingCluster> classify_markings(std::vector<MarkingCluster> clusters, double threshold) {
  for (auto& c : clusters) c.kind = c.length >= threshold ? MarkingKind::Solid : MarkingKind::Dashed;
  return clusters;
}

Polyline complete_marking_line(const PointCloud& cluster, const Trajectory& traj) {
  const Polyline path = trajectory_polyline(traj);
  constexpr double kBin = 1.0;
  const auto bins = static_cast<std::size_t>(std::floor(path.length() / kBin)) + 1;
  std::vector<Point3> sum(bins, Point3::Zero());
  std::vector<std::size_t> count(bins, 0);
  std::vector<double> lateral;
  std::vector<double> vertical;
  lateral.reserve(cluster.size());
  vertical.reserve(cluster.size());
  for (const auto& p : cluster.points) {
    const auto proj = path.project(plan(p));
    const auto b = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, proj.station / kBin)));
    sum[b] += p;
    ++count[b];
    lateral.push_back(proj.lateral);
    vertical.push_back(p.z() - proj.point.z());
  }
  const double lat = median(std::move(lateral));
  const double dz = median(std::move(vertical));
  std::vector<Point3> line;
  line.reserve(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] > 0) {
      line.push_back(sum[b] / double(count[b]));
      continue;
    }
    const double s = std::min(path.length(), (double(b) + 0.5) * kBin);
    const Point3 t = path.point_at(s);
    const Point2 off = plan(t) + lat * left_normal(path.tangent_at(s));
    line.emplace_back(off.x(), off.y(), t.z() + dz);
  }
  return Polyline(std::move(line));
}

OutlinePair select_outlines(const std::vector<MarkingCluster>& solids, const Trajectory& traj,
                            const SignInstance& sign, const ModelParams& params) {
  const Point3 heading = sign_heading(sign, traj);
  const std::size_t k = traj.nearest_plan_index(sign.center);
  const Point3& t_prev = traj[k == 0 ? 0 : k - 1];
  const Point3& t_next = traj[std::min(k + 1, traj.size() - 1)];
  const Point2 dir = (plan(t_next) - plan(t_prev)).normalized();
  const Point2 hp = plan_heading(heading, dir);
  const Point2 across = left_normal(hp);
  const Point2 c = plan(sign.center);

  struct Candidate {
    std::size_t cluster;
    Point3 center;
    double side;  // > 0 left of the trajectory line
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < solids.size(); ++i) {
    if (solids[i].kind != MarkingKind::Solid || solids[i].cloud.empty()) continue;
    Point3 sum = Point3::Zero();
    std::size_t n = 0;
    for (const auto& p : solids[i].cloud.points) {
      if (std::abs((plan(p) - c).dot(across)) <= 0.5 * params.slice_thickness) {
        sum += p;
        ++n;
      }
    }
    std::optional<Point3> center;
    if (n > 0) {
      center = sum / double(n);
    } else {
      center = complete_marking_line(solids[i].cloud, traj).intersect_line(c, hp);
    }
    if (!center) continue;
    cands.push_back({i, *center, cross2(dir, plan(*center) - plan(t_prev))});
  }

  // Ties resolve on coordinates so the choice is independent of input order.
  auto lex_less = [](const Point3& a, const Point3& b) {
    return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
  };
  const Candidate* right = nullptr;
  const Candidate* left = nullptr;
  for (const auto& cand : cands) {
    if (cand.side < 0) {
      const double d = -cand.side;
      if (!right || d > -right->side || (d == -right->side && lex_less(cand.center, right->center))) right = &cand;
    } else if (cand.side > 0) {
      const double d = cand.side;
      if (!left || d < left->side || (d == left->side && lex_less(cand.center, left->center))) left = &cand;
    }
  }
  if (!right || !left) {
    throw Error(ErrorKind::FallbackRequired, "no solid line on the " + std::string(!right ? "right" : "left") +
                                                 " of the trajectory");
  }

  OutlinePair out;
  out.right = complete_marking_line(solids[right->cluster].cloud, traj);
  out.left = complete_marking_line(solids[left->cluster].cloud, traj);
  out.right_anchor = right->center;
  out.left_anchor = left->center;
  out.driving_width = (plan(out.right_anchor) - plan(out.left_anchor)).norm();
  return out;
}

OutlinePair fallback_outlines(const Trajectory& traj, double device_height, double half_width) {
  std::vector<Point3> right;
  std::vector<Point3> left;
  right.reserve(traj.size());
  left.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Point2 rn = right_normal(traj.plan_direction(k));
    const Point3 offset(rn.x() * half_width, rn.y() * half_width, 0.0);
    const Point3 ground = traj[k] - Point3(0, 0, device_height);
    right.push_back(ground + offset);
    left.push_back(ground - offset);
  }
  OutlinePair out;
  out.right = Polyline(std::move(right));
  out.left = Polyline(std::move(left));
  out.right_anchor = out.right.points().front();
  out.left_anchor = out.left.points().front();
  out.driving_width = 2 * half_width;
  out.fallback = true;
  return out;
}

void attach_anchors(OutlinePair& outlines, const Point3& center, const Point3& heading) {
  const Point2 dir = outlines.right.tangent_at(outlines.right.project(plan(center)).station);
  const Point2 hp = plan_heading(heading, dir);
  auto anchor = [&](const Polyline& line) {
    if (auto hit = line.intersect_line(plan(center), hp)) return *hit;
    return line.project(plan(center)).point;
  };
  outlines.right_anchor = anchor(outlines.right);
  outlines.left_anchor = anchor(outlines.left);
  outlines.driving_width = (plan(outlines.right_anchor) - plan(outlines.left_anchor)).norm();
}

ArcSampling build_arc_sampling(const OutlinePair& outlines, double sight_distance, double interval) {
  if (!(interval > 0) || !(sight_distance > interval)) {
    throw Error(ErrorKind::Validation, "arc sampling needs sight_distance > interval > 0");
  }
  const Polyline& right = outlines.right;
  const Polyline& left = outlines.left;
  const double window = std::max(interval, 1.0);

  auto cross_section = [&](double s) {
    const Point3 a = right.point_at(s);
    const Point2 nl = left_normal(right.tangent_at(s, window));
    auto b = left.intersect_line(plan(a), nl, true);
    return std::make_pair(a, b ? *b : left.project(plan(a)).point);
  };

  ArcSampling out;
  auto append = [&](const Point3& a, const Point3& b, double length) {
    out.right.push_back(a);
    out.left.push_back(b);
    out.mid.push_back(0.5 * (a + b));
    out.cumulative.push_back(length);
  };
  append(outlines.right_anchor, outlines.left_anchor, 0.0);

  // Adds a sample, shortening the step by the overshoot ratio when it would
  // carry the midpoint arc length past the sight distance. Returns true once
  // the sight distance is reached.
  auto push = [&](Point3 a, Point3 b) {
    const Point3 a_prev = out.right.back();
    const Point3 b_prev = out.left.back();
    const double done = out.cumulative.back();
    const double seg = (0.5 * (a + b) - out.mid.back()).norm();
    if (done + seg >= sight_distance - 1e-9) {
      const double t = (sight_distance - done) / seg;
      a = a_prev + t * (a - a_prev);
      b = b_prev + t * (b - b_prev);
      append(a, b, sight_distance);
      return true;
    }
    append(a, b, done + seg);
    return false;
  };

  auto chord = [&](double s) {
    const auto [a, b] = cross_section(s);
    return (0.5 * (a + b) - out.mid.back()).norm();
  };

  double s_prev = right.project(plan(outlines.right_anchor)).station;
  for (;;) {
    // Bracket the station whose midpoint lies one interval back.
    double hi = s_prev;
    double lo = std::max(0.0, s_prev - interval);
    double step = interval;
    while (chord(lo) < interval && lo > 0.0) {
      hi = lo;
      step *= 2;
      lo = std::max(0.0, lo - step);
    }
    if (chord(lo) < interval) {
      // Outline exhausted: keep whatever partial step remains.
      const double rest = chord(0.0);
      bool reached = false;
      if (rest > 1e-9) {
        const auto [a, b] = cross_section(0.0);
        reached = push(a, b);
      }
      out.short_field = !reached;
      break;
    }
    for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (chord(mid) >= interval) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const auto [a, b] = cross_section(lo);
    if (push(a, b)) break;
    s_prev = lo;
  }
  return out;
}

SegmentationRects segmentation_rectangles(const Point3& a_k, const Point3& a_k1, const ModelParams& params,
                                          double driving_width) {
  const Point3 step = a_k1 - a_k;
  const Point3 c = step.cross(Point3::UnitZ());
  if (c.norm() < 1e-12) throw Error(ErrorKind::DegenerateStep, "segmentation step is vertical or zero");
  const Point3 h = c.normalized();
  const Point3 up = Point3::UnitZ();
  SegmentationRects r;
  r.across = h;
  r.environment[0] = a_k + params.band_low * up;
  r.environment[1] = a_k + params.band_high * up;
  r.environment[2] = r.environment[1] + params.band_width * h;
  r.environment[3] = r.environment[0] + params.band_width * h;
  const double reach = driving_width + params.marking_margin;
  r.marking[0] = a_k + params.marking_half_height * up;
  r.marking[1] = a_k - params.marking_half_height * up;
  r.marking[2] = r.marking[1] - reach * h;
  r.marking[3] = r.marking[0] - reach * h;
  return r;
}

SegmentedScene sweep_segment(const PointCloud& cloud, const ArcSampling& sampling, const ModelParams& params) {
  SegmentedScene out;
  if (sampling.size() < 2 || cloud.empty()) return out;
  const double driving_width = (plan(sampling.right.front()) - plan(sampling.left.front())).norm();
  const double reach = driving_width + params.marking_margin;
  const SpatialGrid2D grid(cloud.points, 1.0);
  std::vector<char> in_env(cloud.size(), 0);
  std::vector<char> in_mark(cloud.size(), 0);

  for (std::size_t k = 0; k + 1 < sampling.size(); ++k) {
    // Driving order: from the sample farther back toward the sign.
    const Point3& back = sampling.right[k + 1];
    const Point3& front = sampling.right[k];
    const Point2 step = plan(front) - plan(back);
    const double len = step.norm();
    if (len < 1e-12) continue;
    const Point2 dir = step / len;
    const SegmentationRects rects = segmentation_rectangles(back, front, params, driving_width);
    const Point2 h = plan(rects.across);

    Eigen::AlignedBox2d box;
    for (const Point2& base : {plan(back), plan(front)}) {
      box.extend(base);
      box.extend(base + params.band_width * h);
      box.extend(base - reach * h);
    }
    grid.for_each_in_box(box.min(), box.max(), [&](std::uint32_t i) {
      const Point3& p = cloud.points[i];
      const Point2 rel = plan(p) - plan(back);
      const double s = rel.dot(dir);
      if (s < 0 || s > len) return;
      const double v = rel.dot(h);
      const double dz = p.z() - (back.z() + (s / len) * (front.z() - back.z()));
      if (v >= 0 && v <= params.band_width && dz >= params.band_low && dz <= params.band_high) in_env[i] = 1;
      if (v <= 0 && v >= -reach && std::abs(dz) <= params.marking_half_height) in_mark[i] = 1;
    });
  }

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (in_env[i]) {
      out.environment_indices.push_back(i);
      out.environment.points.push_back(cloud.points[i]);
      if (cloud.has_intensity()) out.environment.intensity.push_back(cloud.intensity[i]);
    }
    if (in_mark[i]) {
      out.marking_indices.push_back(i);
      out.markings.points.push_back(cloud.points[i]);
      if (cloud.has_intensity()) out.markings.intensity.push_back(cloud.intensity[i]);
    }
  }
  return out;
}

}  // namespace signsight
