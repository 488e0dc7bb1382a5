#include "signsight/spatial_grid.hpp"

#include <cmath>

namespace signsight {

SpatialGrid2D::SpatialGrid2D(std::span<const Point3> points, double cell_size) : cell_(cell_size) {
  if (!(cell_ > 0)) throw Error(ErrorKind::Validation, "grid cell size must be positive");
  if (points.empty()) return;
  Eigen::AlignedBox2d box;
  for (const auto& p : points) box.extend(plan(p));
  // Keep the dense cell array bounded for sprawling clouds.
  constexpr double kMaxCells = 2e7;
  const Point2 ext = box.sizes();
  while ((std::floor(ext.x() / cell_) + 1) * (std::floor(ext.y() / cell_) + 1) > kMaxCells) cell_ *= 2;
  origin_ = box.min();
  cols_ = static_cast<std::int64_t>(std::floor(ext.x() / cell_)) + 1;
  rows_ = static_cast<std::int64_t>(std::floor(ext.y() / cell_)) + 1;

  std::vector<std::uint32_t> cell_index(points.size());
  offsets_.assign(static_cast<std::size_t>(cols_ * rows_) + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [c, r] = cell_of(plan(points[i]));
    cell_index[i] = static_cast<std::uint32_t>(r * cols_ + c);
    ++offsets_[cell_index[i] + 1];
  }
  for (std::size_t c = 1; c < offsets_.size(); ++c) offsets_[c] += offsets_[c - 1];
  indices_.resize(points.size());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) indices_[fill[cell_index[i]]++] = static_cast<std::uint32_t>(i);
}

std::pair<std::int64_t, std::int64_t> SpatialGrid2D::cell_of(const Point2& p) const {
  const Point2 u = (p - origin_) / cell_;
  const auto c = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(u.x())), 0, cols_ - 1);
  const auto r = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(u.y())), 0, rows_ - 1);
  return {c, r};
}

}  // namespace signsight
