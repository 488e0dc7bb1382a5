#pragma once

#include <filesystem>
#include <string_view>

#include "signsight/scene.hpp"

namespace signsight::io {

/// ASCII XYZ[I] (whitespace separated, '#' comments) or ASCII PLY with float
/// x, y, z vertex properties (and optional intensity). Chosen by the file's
/// first line. Throws Error(Io) for unreadable files and Error(Parse) with a
/// line number for malformed content or an empty cloud.
PointCloud read_point_cloud(const std::filesystem::path& path);

/// Same, from text already in memory; `source` labels diagnostics.
PointCloud parse_point_cloud(std::string_view text, const std::string& source = "<input>");

/// Writes ASCII XYZ, with intensity when present. `decimals` < 0 writes
/// round-trip precision, otherwise fixed-point with that many decimals.
void write_point_cloud(const std::filesystem::path& path, const PointCloud& cloud, int decimals = -1);

void write_points(const std::filesystem::path& path, const std::vector<Point3>& points, int decimals = -1);

}  // namespace signsight::io
