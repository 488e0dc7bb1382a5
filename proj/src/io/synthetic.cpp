#include "signsight/io/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "signsight/alpha_shape.hpp"
#include "signsight/io/point_cloud_io.hpp"
#include "signsight/view.hpp"

namespace signsight::io {
namespace fs = std::filesystem;

namespace {

struct RoadFrame {
  Point2 pos;
  Point2 tangent;
  Point2 right;
};

RoadFrame road_at(const SyntheticSpec& spec, double s) {
  RoadFrame f;
  if (std::isinf(spec.radius)) {
    f.pos = Point2(0, s);
    f.tangent = Point2(0, 1);
  } else {
    const double r = spec.radius;
    const double th = s / r;
    f.pos = Point2(-r + r * std::cos(th), r * std::sin(th));
    f.tangent = Point2(-std::sin(th), std::cos(th));
  }
  f.right = Point2(f.tangent.y(), -f.tangent.x());
  return f;
}

// Station s, lateral v (positive right of the right edge), height w above the road.
Point3 road_point(const SyntheticSpec& spec, double s, double v, double w) {
  const RoadFrame f = road_at(spec, s);
  const Point2 p = f.pos + v * f.right;
  return {p.x(), p.y(), spec.grade * s + w};
}

double quantize(double x, int decimals) {
  if (decimals < 0) return x;
  const double scale = std::pow(10.0, decimals);
  return std::round(x * scale) / scale;
}

void finish(PointCloud& cloud, const SyntheticSpec& spec, std::mt19937_64& rng, bool noisy) {
  std::normal_distribution<double> gauss(0.0, spec.noise > 0 ? spec.noise : 1.0);
  for (auto& p : cloud.points) {
    if (noisy && spec.noise > 0) p += Point3(gauss(rng), gauss(rng), gauss(rng));
    for (int k = 0; k < 3; ++k) p[k] = quantize(p[k], spec.decimals);
  }
}

void sample_box(const OccluderBox& box, std::vector<Point3>& out) {
  const Point3 ext = box.max - box.min;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    if (ext[b] <= 1e-12 || ext[c] <= 1e-12) continue;
    const int nb = std::max(1, static_cast<int>(std::ceil(ext[b] / box.spacing - 1e-9)));
    const int nc = std::max(1, static_cast<int>(std::ceil(ext[c] / box.spacing - 1e-9)));
    const int faces = ext[a] > 1e-12 ? 2 : 1;
    for (int f = 0; f < faces; ++f) {
      for (int i = 0; i <= nb; ++i) {
        for (int j = 0; j <= nc; ++j) {
          Point3 p;
          p[a] = f == 0 ? box.min[a] : box.max[a];
          p[b] = box.min[b] + ext[b] * i / nb;
          p[c] = box.min[c] + ext[c] * j / nc;
          out.push_back(p);
        }
      }
    }
  }
}

// Canonical panel points: a fill grid plus a ring along the outline.
std::vector<Point2> panel_samples(PanelShape shape, double size, double spacing) {
  const std::vector<Point2> outline = panel_outline(shape, size);
  const Polygon2d poly(outline);
  Eigen::AlignedBox2d box;
  for (const auto& v : outline) box.extend(v);
  std::vector<Point2> out;
  const int nx = static_cast<int>(std::floor(box.sizes().x() / spacing)) + 1;
  const int nz = static_cast<int>(std::floor(box.sizes().y() / spacing)) + 1;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < nz; ++j) {
      const Point2 p = box.min() + Point2(i * spacing, j * spacing);
      if (point_in_polygon(p, poly)) out.push_back(p);
    }
  }
  for (std::size_t k = 0; k < outline.size(); ++k) {
    const Point2& a = outline[k];
    const Point2& b = outline[(k + 1) % outline.size()];
    const int n = std::max(1, static_cast<int>(std::ceil((b - a).norm() / spacing)));
    for (int t = 0; t < n; ++t) out.push_back(a + (b - a) * (double(t) / n));
  }
  return out;
}

Eigen::Matrix3d panel_pose(const Point3& normal) {
  Point3 right = normal.cross(Point3::UnitZ());
  if (right.norm() < 1e-12) right = Point3::UnitX();
  right.normalize();
  Eigen::Matrix3d m;
  m.col(0) = right;
  m.col(1) = normal;
  m.col(2) = right.cross(normal);
  return m;
}

const char* shape_name(PanelShape s) {
  switch (s) {
    case PanelShape::Square: return "square";
    case PanelShape::Circle: return "circle";
    case PanelShape::Triangle: return "triangle";
  }
  return "square";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_point(const Point3& p) { return "[" + fmt(p.x()) + ", " + fmt(p.y()) + ", " + fmt(p.z()) + "]"; }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

// Sutherland-Hodgman clip of `subject` against a convex counter-clockwise `clip`.
std::vector<Point2> clip_convex(std::vector<Point2> subject, const std::vector<Point2>& clip) {
  for (std::size_t e = 0; e < clip.size() && !subject.empty(); ++e) {
    const Point2& a = clip[e];
    const Point2& b = clip[(e + 1) % clip.size()];
    auto inside = [&](const Point2& p) { return cross2(b - a, p - a) >= 0; };
    std::vector<Point2> next;
    for (std::size_t k = 0; k < subject.size(); ++k) {
      const Point2& p = subject[k];
      const Point2& q = subject[(k + 1) % subject.size()];
      const bool pin = inside(p);
      const bool qin = inside(q);
      if (pin) next.push_back(p);
      if (pin != qin) {
        const double t = cross2(b - a, a - p) / cross2(b - a, q - p);
        next.push_back(p + t * (q - p));
      }
    }
    subject = std::move(next);
  }
  return subject;
}

double ring_area(const std::vector<Point2>& ring) {
  double twice = 0;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) twice += cross2(ring[j], ring[i]);
  return std::abs(twice) / 2;
}

}  // namespace

std::vector<Point2> panel_outline(PanelShape shape, double size) {
  std::vector<Point2> out;
  const double h = size / 2;
  switch (shape) {
    case PanelShape::Square:
      out = {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
      break;
    case PanelShape::Circle: {
      const int n = 256;
      for (int k = 0; k < n; ++k) {
        const double t = 2 * kPi * k / n;
        out.emplace_back(h * std::cos(t), h * std::sin(t));
      }
      break;
    }
    case PanelShape::Triangle: {
      // Equilateral, apex up, centroid at the origin.
      const double tri_h = size * std::sqrt(3.0) / 2;
      out = {{-h, -tri_h / 3}, {h, -tri_h / 3}, {0, 2 * tri_h / 3}};
      break;
    }
  }
  return out;
}

std::optional<double> analytic_occlusion_ratio(const std::vector<Point3>& outline_world, const Point3& center,
                                               const OccluderBox& box, const Point3& viewpoint) {
  const ViewTransform view = view_transform(center, viewpoint);
  const Point3 eye = view.eye();
  std::vector<Point2> panel;
  for (const auto& p : outline_world) panel.push_back(ray_plane_xy_intersection<double>(eye, view.apply(p)));
  const Polygon2d panel_poly(panel);
  const double panel_area = polygon_area(panel_poly);

  std::vector<Point3> corners;
  for (int k = 0; k < 8; ++k) {
    corners.emplace_back(k & 1 ? box.max.x() : box.min.x(), k & 2 ? box.max.y() : box.min.y(),
                         k & 4 ? box.max.z() : box.min.z());
  }
  int behind = 0, beyond = 0, between = 0;
  std::vector<Point2> image;
  for (const auto& c : corners) {
    const Point3 p = view.apply(c);
    if (p.z() <= 0) {
      ++behind;
    } else if (p.z() >= view.distance) {
      ++beyond;
    } else {
      ++between;
      image.push_back(ray_plane_xy_intersection<double>(eye, p));
    }
  }
  if (between == 0 && (behind == 8 || beyond == 8)) return 0.0;
  if (between != 8) return std::nullopt;
  Polygon2d hull;
  try {
    hull = convex_hull(image);
  } catch (const Error&) {
    return 0.0;
  }
  const auto clipped = clip_convex(hull.vertices(), panel_poly.vertices());
  if (clipped.size() < 3) return 0.0;
  return ring_area(clipped) / panel_area;
}

SyntheticSpec parse_synthetic_spec(const Document& doc) {
  SyntheticSpec spec;
  const Table& root = doc.root;
  auto fail = [](const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Validation, where + " " + what);
  };
  if (auto v = root.optional_number("seed")) {
    if (*v < 0 || *v != std::floor(*v)) fail(root.where("seed"), "must be a non-negative integer");
    spec.seed = static_cast<std::uint64_t>(*v);
  }
  spec.noise = root.optional_quantity("noise", Dimension::Length).value_or(0.0);
  if (auto v = root.optional_number("decimals")) spec.decimals = static_cast<int>(*v);
  if (spec.noise < 0) fail(root.where("noise"), "must be >= 0");

  if (const Table* road = doc.table("road")) {
    spec.length = road->optional_quantity("length", Dimension::Length).value_or(spec.length);
    spec.radius = road->optional_quantity("radius", Dimension::Length).value_or(spec.radius);
    spec.grade = road->optional_number("grade").value_or(spec.grade);
    if (auto v = road->optional_number("lanes")) spec.lanes = static_cast<int>(*v);
    spec.lane_width = road->optional_quantity("lane_width", Dimension::Length).value_or(spec.lane_width);
    spec.standard_lane_width =
        road->optional_quantity("standard_lane_width", Dimension::Length).value_or(spec.standard_lane_width);
    if (auto m = road->optional_string("markings")) {
      if (*m != "solid" && *m != "none") fail(road->where("markings"), "must be 'solid' or 'none'");
      spec.markings = *m == "solid";
    }
    spec.marking_width = road->optional_quantity("marking_width", Dimension::Length).value_or(spec.marking_width);
    spec.marking_spacing =
        road->optional_quantity("marking_spacing", Dimension::Length).value_or(spec.marking_spacing);
    spec.dash_length = road->optional_quantity("dash_length", Dimension::Length).value_or(spec.dash_length);
    spec.dash_gap = road->optional_quantity("dash_gap", Dimension::Length).value_or(spec.dash_gap);
    spec.ground_spacing = road->optional_quantity("ground_spacing", Dimension::Length).value_or(0.0);
    spec.ground_margin = road->optional_quantity("ground_margin", Dimension::Length).value_or(spec.ground_margin);
    spec.trajectory_spacing =
        road->optional_quantity("trajectory_spacing", Dimension::Length).value_or(spec.trajectory_spacing);
    if (auto v = road->optional_number("trajectory_lane")) spec.trajectory_lane = static_cast<int>(*v);
    spec.device_height = road->optional_quantity("device_height", Dimension::Length).value_or(spec.device_height);
    spec.design_speed = road->optional_quantity("design_speed", Dimension::Speed).value_or(spec.design_speed);
    spec.v85 = road->optional_quantity("v85", Dimension::Speed).value_or(spec.v85);
    spec.reaction_time = road->optional_quantity("reaction_time", Dimension::Time).value_or(spec.reaction_time);
    if (!(spec.length > 0)) fail(road->where("length"), "must be > 0");
    if (spec.radius == 0 || std::isnan(spec.radius)) fail(road->where("radius"), "must be non-zero");
    if (spec.lanes < 1) fail(road->where("lanes"), "must be >= 1");
    if (!(spec.lane_width > 0)) fail(road->where("lane_width"), "must be > 0");
    if (spec.trajectory_lane < 0 || spec.trajectory_lane >= spec.lanes) {
      fail(road->where("trajectory_lane"), "must name an existing lane");
    }
    if (!(spec.marking_spacing > 0) || !(spec.trajectory_spacing > 0)) {
      fail(road->where(), "marking and trajectory spacings must be > 0");
    }
    if (spec.ground_spacing < 0) fail(road->where("ground_spacing"), "must be >= 0");
    if (!(spec.dash_length > 0) || !(spec.dash_gap > 0)) fail(road->where(), "dash length and gap must be > 0");
  }

  if (const Table* sign = doc.table("sign")) {
    spec.sign_id = sign->optional_string("id").value_or(spec.sign_id);
    if (auto s = sign->optional_string("shape")) {
      if (*s == "square") {
        spec.shape = PanelShape::Square;
      } else if (*s == "circle") {
        spec.shape = PanelShape::Circle;
      } else if (*s == "triangle") {
        spec.shape = PanelShape::Triangle;
      } else {
        fail(sign->where("shape"), "must be square, circle or triangle");
      }
    }
    spec.size = sign->optional_quantity("size", Dimension::Length).value_or(spec.size);
    spec.station = sign->optional_quantity("station", Dimension::Length).value_or(spec.station);
    spec.offset = sign->optional_quantity("offset", Dimension::Length).value_or(spec.offset);
    spec.height = sign->optional_quantity("height", Dimension::Length).value_or(spec.height);
    if (auto m = sign->optional_string("mount")) {
      try {
        spec.side = parse_sign_side(*m);
      } catch (const Error& e) {
        fail(sign->where("mount"), e.what());
      }
    }
    spec.panel_spacing = sign->optional_quantity("spacing", Dimension::Length).value_or(spec.panel_spacing);
    spec.yaw = sign->optional_quantity("yaw", Dimension::Angle).value_or(0.0);
    spec.pole = sign->get_bool("pole", spec.side == SignSide::Right);
    spec.sight_distance = sign->optional_quantity("sight_distance", Dimension::Length);
    if (sign->contains("sd_design_speeds")) {
      const auto speeds = sign->get_quantity_list("sd_design_speeds", Dimension::Speed);
      const auto values = sign->get_quantity_list("sd_values", Dimension::Length);
      if (speeds.size() != values.size()) fail(sign->where("sd_values"), "must pair with sd_design_speeds");
      for (std::size_t k = 0; k < speeds.size(); ++k) spec.sd_rows.emplace_back(speeds[k], values[k]);
    }
    spec.sign_type = sign->optional_string("type").value_or("");
    if (!(spec.size > 0) || !(spec.panel_spacing > 0)) fail(sign->where(), "size and spacing must be > 0");
    if (spec.station < 0 || spec.station > spec.length) fail(sign->where("station"), "must lie on the road");
  }
  if (spec.sign_type.empty()) {
    spec.sign_type = std::string(shape_name(spec.shape)) + "_" + std::to_string(std::lround(spec.size * 1000));
  }
  if (spec.sd_rows.empty() && !spec.sight_distance) spec.sight_distance = 60.0;

  for (const Table& t : doc.array("occluder")) {
    OccluderBox box;
    const Point3 a = t.get_point("min");
    const Point3 b = t.get_point("max");
    box.min = a.cwiseMin(b);
    box.max = a.cwiseMax(b);
    box.spacing = t.optional_quantity("spacing", Dimension::Length).value_or(box.spacing);
    if (!(box.spacing > 0)) fail(t.where("spacing"), "must be > 0");
    spec.occluders.push_back(box);
  }
  if (const Table* truth = doc.table("truth")) {
    spec.probe_interval = truth->optional_quantity("probe_interval", Dimension::Length).value_or(spec.probe_interval);
    if (!(spec.probe_interval > 0)) fail(truth->where("probe_interval"), "must be > 0");
  }
  if (const Table* params = doc.table("params")) {
    for (const auto& [k, v] : params->entries()) spec.params.emplace_back(k, Table::text_of(v));
  }
  return spec;
}

SyntheticSpec load_synthetic_spec(const fs::path& path) { return parse_synthetic_spec(load_keyvalue(path)); }

SyntheticScene generate_synthetic(const SyntheticSpec& spec) {
  SyntheticScene scene;
  std::mt19937_64 rng(spec.seed);
  const double road_width = spec.lanes * spec.lane_width;

  // Trajectory along the chosen lane center at scanner height.
  const double traj_v = -(spec.trajectory_lane + 0.5) * spec.lane_width;
  const int traj_n = static_cast<int>(std::floor(spec.length / spec.trajectory_spacing + 1e-9));
  for (int k = 0; k <= traj_n; ++k) {
    Point3 p = road_point(spec, k * spec.trajectory_spacing, traj_v, spec.device_height);
    for (int i = 0; i < 3; ++i) p[i] = quantize(p[i], spec.decimals);
    scene.trajectory.push_back(p);
  }

  // Markings: solid edges, dashed dividers, one cluster per line or dash.
  if (spec.markings) {
    auto line = [&](double v, double s0, double s1) {
      PointCloud c;
      const int n = std::max(1, static_cast<int>(std::round((s1 - s0) / spec.marking_spacing)));
      for (int k = 0; k <= n; ++k) {
        const double s = s0 + (s1 - s0) * k / n;
        for (double dv : {-0.5, 0.0, 0.5}) c.points.push_back(road_point(spec, s, v + dv * spec.marking_width, 0.0));
      }
      finish(c, spec, rng, true);
      scene.marking_clusters.push_back(std::move(c));
    };
    line(0.0, 0.0, spec.length);
    line(-road_width, 0.0, spec.length);
    for (int i = 1; i < spec.lanes; ++i) {
      for (double s = 0; s < spec.length; s += spec.dash_length + spec.dash_gap) {
        line(-i * spec.lane_width, s, std::min(spec.length, s + spec.dash_length));
      }
    }
  }

  // Sign panel.
  const RoadFrame at_sign = road_at(spec, spec.station);
  const double sign_v = spec.side == SignSide::Right ? spec.offset : -spec.offset;
  scene.sign_center = road_point(spec, spec.station, sign_v, spec.height);
  const Point3 facing(-at_sign.tangent.x(), -at_sign.tangent.y(), 0.0);
  scene.sign_normal = Eigen::AngleAxisd(spec.yaw, Point3::UnitZ()) * facing;
  const Eigen::Matrix3d pose = panel_pose(scene.sign_normal);
  for (const Point2& q : panel_samples(spec.shape, spec.size, spec.panel_spacing)) {
    const Point3 canonical(q.x(), 0.0, q.y());
    scene.library_panel.points.push_back(canonical);
    scene.panel.points.push_back(scene.sign_center + pose * canonical);
  }
  finish(scene.library_panel, spec, rng, false);
  finish(scene.panel, spec, rng, true);

  // Environment: ground, pole, occluders.
  PointCloud& env = scene.environment;
  if (spec.ground_spacing > 0) {
    const int ns = static_cast<int>(std::floor(spec.length / spec.ground_spacing + 1e-9));
    const double v0 = -road_width - spec.ground_margin;
    const int nv = static_cast<int>(std::floor((road_width + 2 * spec.ground_margin) / spec.ground_spacing + 1e-9));
    for (int i = 0; i <= ns; ++i) {
      for (int j = 0; j <= nv; ++j) env.points.push_back(road_point(spec, i * spec.ground_spacing, v0 + j * spec.ground_spacing, 0.0));
    }
  }
  if (spec.pole) {
    const double bottom = spec.height - 0.5 * spec.size;
    const Point3 foot = road_point(spec, spec.station, sign_v, 0.0) - 0.05 * scene.sign_normal;
    for (double z = 0; z < bottom; z += 0.05) env.points.push_back(foot + Point3(0, 0, z));
  }
  for (const auto& box : spec.occluders) sample_box(box, env.points);
  finish(env, spec, rng, true);

  // Ground truth on straight, level roads.
  if (std::isinf(spec.radius) && spec.grade == 0) {
    std::vector<Point3> outline;
    for (const Point2& q : panel_outline(spec.shape, spec.size)) {
      outline.push_back(scene.sign_center + pose * Point3(q.x(), 0.0, q.y()));
    }
    const double sd = spec.sight_distance.value_or(spec.sd_rows.empty() ? 60.0 : spec.sd_rows.front().second);
    for (int lane = 0; lane < spec.lanes; ++lane) {
      const double v = -(lane + 0.5) * spec.lane_width;
      for (double d = spec.probe_interval; d <= sd + 1e-9; d += spec.probe_interval) {
        TruthProbe probe;
        probe.lane = lane;
        probe.d_length = d;
        probe.viewpoint = road_point(spec, spec.station - d, v, 1.2);
        probe.computable = true;
        int contributing = 0;
        for (const auto& box : spec.occluders) {
          const auto r = analytic_occlusion_ratio(outline, scene.sign_center, box, probe.viewpoint);
          if (!r) {
            probe.computable = false;
            break;
          }
          if (*r > 0) ++contributing;
          probe.occlusion_ratio += *r;
        }
        if (contributing > 1) probe.computable = false;
        if (!probe.computable) probe.occlusion_ratio = 0;
        scene.probes.push_back(probe);
      }
    }
  }
  return scene;
}

void write_synthetic(const SyntheticSpec& spec, const SyntheticScene& scene, const fs::path& dir) {
  fs::create_directories(dir);
  const int dec = spec.decimals;
  write_points(dir / "trajectory.xyz", scene.trajectory, dec);
  if (!scene.environment.empty()) write_point_cloud(dir / "environment.xyz", scene.environment, dec);
  const std::string panel_file = "sign_" + spec.sign_id + ".xyz";
  write_point_cloud(dir / panel_file, scene.panel, dec);
  if (!scene.marking_clusters.empty()) {
    fs::remove_all(dir / "markings");
    for (std::size_t k = 0; k < scene.marking_clusters.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "cluster_%04zu.xyz", k);
      write_point_cloud(dir / "markings" / name, scene.marking_clusters[k], dec);
    }
  }

  // Library with the canonical panel.
  write_point_cloud(dir / "library" / (spec.sign_type + ".xyz"), scene.library_panel, dec);
  {
    std::ofstream lib(dir / "library" / "library.toml");
    lib << "# sign library generated from a synthetic spec\n\n[[type]]\n";
    lib << "name = " << quote(spec.sign_type) << "\n";
    lib << "panel = " << quote(spec.sign_type + ".xyz") << "\n";
    if (!spec.sd_rows.empty()) {
      std::string speeds, values;
      for (const auto& [v, sd] : spec.sd_rows) {
        speeds += (speeds.empty() ? "" : ", ") + quote(fmt(v) + " m/s");
        values += (values.empty() ? "" : ", ") + fmt(sd);
      }
      lib << "sd_design_speeds = [" << speeds << "]\n";
      lib << "sd_values = [" << values << "]\n";
    }
  }

  {
    std::ofstream m(dir / "manifest.toml");
    m << "# scene manifest generated from a synthetic spec\n";
    m << "trajectory = \"trajectory.xyz\"\n";
    m << "environment = [" << (scene.environment.empty() ? "" : "\"environment.xyz\"") << "]\n";
    if (scene.marking_clusters.empty()) {
      m << "markings = \"auto-fallback\"\n";
    } else {
      m << "markings_dir = \"markings\"\n";
    }
    m << "library = \"library\"\n\n[road]\n";
    m << "design_speed = " << quote(fmt(spec.design_speed) + " m/s") << "\n";
    m << "v85 = " << quote(fmt(spec.v85) + " m/s") << "\n";
    m << "reaction_time = " << quote(fmt(spec.reaction_time) + " s") << "\n";
    m << "lane_width = " << quote(fmt(spec.standard_lane_width) + " m") << "\n";
    m << "device_height = " << quote(fmt(spec.device_height) + " m") << "\n";
    m << "fallback_half_width = " << quote(fmt(0.5 * spec.lanes * spec.lane_width) + " m") << "\n";
    if (!spec.params.empty()) {
      m << "\n[params]\n";
      for (const auto& [k, v] : spec.params) m << k << " = " << quote(v) << "\n";
    }
    m << "\n[[sign]]\n";
    m << "id = " << quote(spec.sign_id) << "\n";
    m << "type = " << quote(spec.sign_type) << "\n";
    m << "panel = " << quote(panel_file) << "\n";
    m << "mount = " << quote(to_string(spec.side)) << "\n";
    if (spec.sight_distance) m << "sight_distance = " << quote(fmt(*spec.sight_distance) + " m") << "\n";
  }

  {
    std::ofstream t(dir / "truth.toml");
    t << "# ground truth for the generated scene\n";
    t << "trajectory_points = " << scene.trajectory.size() << "\n";
    t << "environment_points = " << scene.environment.size() << "\n";
    t << "marking_clusters = " << scene.marking_clusters.size() << "\n";
    std::size_t marking_points = 0;
    for (const auto& c : scene.marking_clusters) marking_points += c.size();
    t << "marking_points = " << marking_points << "\n";
    t << "\n[sign]\n";
    t << "id = " << quote(spec.sign_id) << "\n";
    t << "panel_points = " << scene.panel.size() << "\n";
    t << "center = " << fmt_point(scene.sign_center) << "\n";
    t << "normal = " << fmt_point(scene.sign_normal) << "\n";
    for (const auto& p : scene.probes) {
      t << "\n[[probe]]\n";
      t << "lane = " << p.lane << "\n";
      t << "d_length = " << fmt(p.d_length) << "\n";
      t << "viewpoint = " << fmt_point(p.viewpoint) << "\n";
      t << "computable = " << (p.computable ? "true" : "false") << "\n";
      t << "occlusion_ratio = " << fmt(p.occlusion_ratio) << "\n";
    }
  }
}

}  // namespace signsight::io
