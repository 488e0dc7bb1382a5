#include "signsight/io/manifest.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "signsight/io/keyvalue.hpp"
#include "signsight/io/point_cloud_io.hpp"

namespace signsight::io {
namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& rel) {
  const fs::path p(rel);
  return p.is_absolute() ? p : base / p;
}

PointCloud load_cloud(const fs::path& path, const std::string& where) {
  if (!fs::exists(path)) throw Error(ErrorKind::Io, where + " file not found: '" + path.string() + "'");
  return read_point_cloud(path);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

// Sets one parameter from a manifest entry, prefixing errors with its location.
void set_param(ModelParams& params, const Table& table, const std::string& key, const std::string& param) {
  const Value* v = table.find(key);
  if (!v) return;
  if (v->is_array() || v->is_bool()) {
    throw Error(ErrorKind::Validation, table.where(key) + " expected a number or a quantity string");
  }
  try {
    params.set(param, Table::text_of(*v));
  } catch (const Error& e) {
    throw Error(ErrorKind::Validation, table.where(key) + " " + e.what());
  }
}

}  // namespace

SignLibrary load_sign_library(const fs::path& dir, const ModelParams& params) {
  const fs::path index = dir / "library.toml";
  if (!fs::exists(index)) throw Error(ErrorKind::Io, "sign library index not found: '" + index.string() + "'");
  const Document doc = load_keyvalue(index);
  SignLibrary library;
  for (const Table& t : doc.array("type")) {
    SignLibraryEntry entry;
    entry.type = t.get_string("name");
    if (library.count(entry.type)) throw Error(ErrorKind::Validation, t.where("name") + " duplicate sign type");
    const PointCloud raw = load_cloud(resolve(dir, t.get_string("panel")), t.where("panel"));
    try {
      entry.panel = canonicalize_panel(raw);
      entry.standard_area = standard_area(entry.panel, params);
    } catch (const Error& e) {
      throw Error(ErrorKind::Validation, t.where("panel") + " " + e.what());
    }
    if (t.contains("sd_design_speeds") || t.contains("sd_values")) {
      const auto speeds = t.get_quantity_list("sd_design_speeds", Dimension::Speed);
      const auto values = t.get_quantity_list("sd_values", Dimension::Length);
      if (speeds.size() != values.size()) {
        throw Error(ErrorKind::Validation, t.where("sd_values") + " must pair with sd_design_speeds");
      }
      for (std::size_t k = 0; k < speeds.size(); ++k) entry.sight_distance_by_speed.emplace_back(speeds[k], values[k]);
      std::sort(entry.sight_distance_by_speed.begin(), entry.sight_distance_by_speed.end());
    }
    library.emplace(entry.type, std::move(entry));
  }
  return library;
}

void apply_params_file(const fs::path& path, ModelParams& params) {
  const std::string text = read_text_file(path);
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path.string() + ":" + std::to_string(line_no) + ":";
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, where + " expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = unquote(trim(std::string_view(line).substr(eq + 1)));
    try {
      params.set(key, value);
    } catch (const Error& e) {
      throw Error(ErrorKind::Validation, where + " " + e.what());
    }
  }
}

Scene load_scene(const fs::path& manifest, const std::optional<fs::path>& params_file) {
  if (!fs::exists(manifest)) throw Error(ErrorKind::Io, "manifest not found: '" + manifest.string() + "'");
  const Document doc = load_keyvalue(manifest);
  const fs::path base = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
  const Table& root = doc.root;
  Scene scene;

  // Parameters: defaults, then [road], then [params], then the params file.
  std::optional<double> road_sight_distance;
  if (const Table* road = doc.table("road")) {
    set_param(scene.params, *road, "design_speed", "design_speed");
    set_param(scene.params, *road, "v85", "v85");
    set_param(scene.params, *road, "reaction_time", "reaction_time");
    set_param(scene.params, *road, "t_vrt", "reaction_time");
    set_param(scene.params, *road, "lane_width", "lane_width");
    road_sight_distance = road->optional_quantity("sight_distance", Dimension::Length);
    scene.road.device_height = road->optional_quantity("device_height", Dimension::Length).value_or(2.0);
    scene.road.fallback_half_width =
        road->optional_quantity("fallback_half_width", Dimension::Length).value_or(scene.params.lane_width);
    if (road_sight_distance && !(*road_sight_distance > 0)) {
      throw Error(ErrorKind::Validation, road->where("sight_distance") + " must be > 0");
    }
    if (!(scene.road.fallback_half_width > 0)) {
      throw Error(ErrorKind::Validation, road->where("fallback_half_width") + " must be > 0");
    }
  }
  const Table* params_table = doc.table("params");
  if (params_table) {
    for (const auto& [key, value] : params_table->entries()) set_param(scene.params, *params_table, key, key);
  }
  if (params_file) apply_params_file(*params_file, scene.params);
  try {
    scene.params.validate();
  } catch (const Error& e) {
    const std::string where = params_table ? params_table->where() : manifest.string() + ":";
    throw Error(ErrorKind::Validation, where + " " + e.what());
  }

  // Trajectory and clouds.
  {
    const PointCloud traj = load_cloud(resolve(base, root.get_string("trajectory")), root.where("trajectory"));
    try {
      scene.trajectory = Trajectory(traj.points);
    } catch (const Error& e) {
      throw Error(ErrorKind::Validation, root.where("trajectory") + " " + e.what());
    }
  }
  if (root.contains("environment")) {
    for (const auto& rel : root.get_string_list("environment")) {
      const PointCloud part = load_cloud(resolve(base, rel), root.where("environment"));
      const bool keep_intensity = scene.environment.empty() ? part.has_intensity()
                                                            : scene.environment.has_intensity() && part.has_intensity();
      if (!keep_intensity) scene.environment.intensity.clear();
      scene.environment.points.insert(scene.environment.points.end(), part.points.begin(), part.points.end());
      if (keep_intensity) {
        scene.environment.intensity.insert(scene.environment.intensity.end(), part.intensity.begin(),
                                           part.intensity.end());
      }
    }
  }

  std::vector<fs::path> marking_files;
  const Value* markings = root.find("markings");
  if (markings && markings->is_string() && std::get<std::string>(markings->data) == "auto-fallback") {
    scene.auto_fallback = true;
  } else if (markings) {
    for (const auto& rel : root.get_string_list("markings")) marking_files.push_back(resolve(base, rel));
  }
  if (root.contains("markings_dir")) {
    const fs::path dir = resolve(base, root.get_string("markings_dir"));
    if (!fs::is_directory(dir)) {
      throw Error(ErrorKind::Io, root.where("markings_dir") + " not a directory: '" + dir.string() + "'");
    }
    std::vector<fs::path> found;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file()) found.push_back(e.path());
    }
    std::sort(found.begin(), found.end());
    marking_files.insert(marking_files.end(), found.begin(), found.end());
    scene.auto_fallback = false;
  }
  if (!markings && !root.contains("markings_dir")) scene.auto_fallback = true;
  for (const auto& f : marking_files) {
    MarkingCluster c;
    c.cloud = load_cloud(f, root.where(root.contains("markings") ? "markings" : "markings_dir"));
    c.length = marking_length(c.cloud, scene.trajectory);
    scene.markings.push_back(std::move(c));
  }

  // Sign library.
  fs::path library_dir;
  if (root.contains("library")) {
    library_dir = resolve(base, root.get_string("library"));
  } else if (const char* env = std::getenv(kLibraryEnv); env && *env) {
    library_dir = env;
  } else {
    throw Error(ErrorKind::Validation, root.where() + " no sign library: set 'library' or " + kLibraryEnv);
  }
  scene.library = load_sign_library(library_dir, scene.params);

  // Signs.
  std::set<std::string> ids;
  int ordinal = 0;
  for (const Table& t : doc.array("sign")) {
    ++ordinal;
    SignInstance sign;
    sign.id = t.optional_string("id").value_or("sign" + std::to_string(ordinal));
    if (!ids.insert(sign.id).second) throw Error(ErrorKind::Validation, t.where("id") + " duplicate sign id");
    sign.type = t.get_string("type");
    const auto entry = scene.library.find(sign.type);
    if (entry == scene.library.end()) {
      throw Error(ErrorKind::Validation, t.where("type") + " unknown sign type '" + sign.type + "'");
    }
    try {
      sign.side = parse_sign_side(t.optional_string("mount").value_or("right"));
    } catch (const Error& e) {
      throw Error(ErrorKind::Validation, t.where("mount") + " " + e.what());
    }
    sign.panel = load_cloud(resolve(base, t.get_string("panel")), t.where("panel"));

    std::optional<double> sd = t.optional_quantity("sight_distance", Dimension::Length);
    if (!sd) sd = road_sight_distance;
    if (!sd) sd = entry->second.sight_distance_for(scene.params.design_speed);
    if (!sd) throw Error(ErrorKind::Validation, t.where() + " no sight distance for sign '" + sign.id + "'");
    if (!(*sd > scene.params.viewpoint_interval)) {
      throw Error(ErrorKind::Validation, t.where() + " sight distance must exceed the viewpoint interval");
    }
    sign.sight_distance = *sd;

    try {
      locate_sign(sign, scene.trajectory);
      const PlaneFit fit = plane_fit_center(sign.panel);
      if (!(fit.rms < kMaxPanelRms)) {
        throw Error(ErrorKind::DegeneratePanel, "panel is not planar (rms " + std::to_string(fit.rms) + " m)");
      }
    } catch (const Error& e) {
      throw Error(ErrorKind::Validation, t.where("panel") + " " + e.what());
    }
    scene.signs.push_back(std::move(sign));
  }
  return scene;
}

}  // namespace signsight::io
