#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "signsight/geometry.hpp"

namespace signsight {

/// Uniform plan-view bucket grid over a point set, stored CSR-style so a
/// cloud of N points costs two arrays of N and (cells + 1) integers.
class SpatialGrid2D {
public:
  SpatialGrid2D(std::span<const Point3> points, double cell_size);

  /// Calls `visit(index)` for every point whose cell overlaps the plan box.
  template <class Visit>
  void for_each_in_box(const Point2& lo, const Point2& hi, Visit&& visit) const {
    if (cols_ == 0) return;
    const auto [c0, r0] = cell_of(lo);
    const auto [c1, r1] = cell_of(hi);
    for (std::int64_t r = r0; r <= r1; ++r) {
      for (std::int64_t c = c0; c <= c1; ++c) {
        const std::size_t cell = static_cast<std::size_t>(r * cols_ + c);
        for (std::uint32_t k = offsets_[cell]; k < offsets_[cell + 1]; ++k) visit(indices_[k]);
      }
    }
  }

  double cell_size() const { return cell_; }

private:
  std::pair<std::int64_t, std::int64_t> cell_of(const Point2& p) const;

  double cell_ = 1.0;
  Point2 origin_ = Point2::Zero();
  std::int64_t cols_ = 0;
  std::int64_t rows_ = 0;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> indices_;
};

}  // namespace signsight
