#include "signsight/io/point_cloud_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "signsight/io/keyvalue.hpp"

namespace signsight::io {
namespace {

[[noreturn]] void fail_at(const std::string& source, int line, const std::string& what) {
  throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool to_double(std::string_view word, double& out) {
  const std::string s(word);
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return !s.empty() && end == s.c_str() + s.size() && std::isfinite(out);
}

struct Lines {
  std::string_view text;
  std::size_t pos = 0;
  int number = 0;

  bool next(std::string_view& line) {
    if (pos >= text.size()) return false;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++number;
    return true;
  }
};

PointCloud parse_xyz(std::string_view text, const std::string& source) {
  PointCloud cloud;
  Lines lines{text};
  std::string_view line;
  bool intensity = false;
  while (lines.next(line)) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) continue;
    if (words.size() != 3 && words.size() != 4) {
      fail_at(source, lines.number, "expected 'x y z [intensity]', got " + std::to_string(words.size()) + " fields");
    }
    double v[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (!to_double(words[k], v[k])) fail_at(source, lines.number, "not a number: '" + std::string(words[k]) + "'");
    }
    if (cloud.points.empty()) {
      intensity = words.size() == 4;
    } else if (intensity != (words.size() == 4)) {
      fail_at(source, lines.number, "intensity column present on some lines only");
    }
    cloud.points.emplace_back(v[0], v[1], v[2]);
    if (intensity) cloud.intensity.push_back(v[3]);
  }
  return cloud;
}

PointCloud parse_ply(std::string_view text, const std::string& source) {
  Lines lines{text};
  std::string_view line;
  lines.next(line);  // "ply"
  std::size_t vertices = 0;
  bool in_vertex = false;
  bool header_done = false;
  std::vector<std::string> properties;
  while (lines.next(line)) {
    const auto words = split_words(line);
    if (words.empty()) continue;
    if (words[0] == "format") {
      if (words.size() < 2 || words[1] != "ascii") fail_at(source, lines.number, "only ASCII PLY is supported");
    } else if (words[0] == "comment" || words[0] == "obj_info") {
      continue;
    } else if (words[0] == "element") {
      if (words.size() != 3) fail_at(source, lines.number, "malformed element line");
      in_vertex = words[1] == "vertex";
      if (in_vertex) {
        double n = 0;
        if (!to_double(words[2], n) || n < 0) fail_at(source, lines.number, "bad vertex count");
        vertices = static_cast<std::size_t>(n);
      }
    } else if (words[0] == "property") {
      if (in_vertex) {
        if (words.size() != 3 || words[1] == "list") fail_at(source, lines.number, "unsupported vertex property");
        properties.emplace_back(words[2]);
      }
    } else if (words[0] == "end_header") {
      header_done = true;
      break;
    } else {
      fail_at(source, lines.number, "unexpected header line '" + std::string(words[0]) + "'");
    }
  }
  if (!header_done) fail_at(source, lines.number, "missing end_header");
  int ix = -1, iy = -1, iz = -1, ii = -1;
  for (int k = 0; k < static_cast<int>(properties.size()); ++k) {
    if (properties[k] == "x") ix = k;
    if (properties[k] == "y") iy = k;
    if (properties[k] == "z") iz = k;
    if (properties[k] == "intensity" || properties[k] == "scalar_intensity") ii = k;
  }
  if (ix < 0 || iy < 0 || iz < 0) fail_at(source, lines.number, "vertex element lacks x, y, z properties");

  PointCloud cloud;
  cloud.points.reserve(vertices);
  while (cloud.points.size() < vertices && lines.next(line)) {
    const auto words = split_words(line);
    if (words.empty()) continue;
    if (words.size() < properties.size()) fail_at(source, lines.number, "too few values for vertex");
    std::vector<double> v(properties.size());
    for (std::size_t k = 0; k < properties.size(); ++k) {
      if (!to_double(words[k], v[k])) fail_at(source, lines.number, "not a number: '" + std::string(words[k]) + "'");
    }
    cloud.points.emplace_back(v[ix], v[iy], v[iz]);
    if (ii >= 0) cloud.intensity.push_back(v[ii]);
  }
  if (cloud.points.size() < vertices) {
    fail_at(source, lines.number, "expected " + std::to_string(vertices) + " vertices, found " +
                                      std::to_string(cloud.points.size()));
  }
  return cloud;
}

}  // namespace

PointCloud parse_point_cloud(std::string_view text, const std::string& source) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  const bool ply = text.substr(first, 3) == "ply" &&
                   (first + 3 == text.size() || std::isspace(static_cast<unsigned char>(text[first + 3])));
  PointCloud cloud = ply ? parse_ply(text.substr(first), source) : parse_xyz(text, source);
  if (cloud.empty()) throw Error(ErrorKind::Parse, source + ": point cloud is empty");
  return cloud;
}

PointCloud read_point_cloud(const std::filesystem::path& path) {
  return parse_point_cloud(read_text_file(path), path.string());
}

namespace {

std::FILE* open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  return f;
}

}  // namespace

void write_point_cloud(const std::filesystem::path& path, const PointCloud& cloud, int decimals) {
  std::FILE* f = open_for_write(path);
  const bool fixed = decimals >= 0;
  const int prec = fixed ? decimals : 17;
  const char* fmt3 = fixed ? "%.*f %.*f %.*f\n" : "%.*g %.*g %.*g\n";
  const char* fmt4 = fixed ? "%.*f %.*f %.*f %.*f\n" : "%.*g %.*g %.*g %.*g\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point3& p = cloud.points[i];
    if (cloud.has_intensity()) {
      std::fprintf(f, fmt4, prec, p.x(), prec, p.y(), prec, p.z(), prec, cloud.intensity[i]);
    } else {
      std::fprintf(f, fmt3, prec, p.x(), prec, p.y(), prec, p.z());
    }
  }
  if (std::fclose(f) != 0) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

void write_points(const std::filesystem::path& path, const std::vector<Point3>& points, int decimals) {
  PointCloud cloud;
  cloud.points = points;
  write_point_cloud(path, cloud, decimals);
}

}  // namespace signsight::io
