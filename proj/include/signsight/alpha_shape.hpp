#pragma once

#include <array>
#include <span>
#include <vector>

#include "signsight/geometry.hpp"

namespace signsight {

/// Delaunay triangulation of a planar point set. Triangles index into the
/// deduplicated `points` array and are counter-clockwise; `neighbors[t][i]`
/// is the triangle across the edge opposite vertex i, or -1 on the hull.
struct Triangulation {
  std::vector<Point2> points;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 3>> neighbors;
};

/// Incremental Bowyer-Watson insertion in Hilbert order. Throws
/// DegeneratePolygon for fewer than three distinct or all-collinear points.
Triangulation delaunay_triangulation(std::span<const Point2> points);

/// Outer boundary of every connected component of the alpha complex
/// (triangles whose circumradius does not exceed `alpha`), largest area first.
/// Holes are dropped. Vertices are input points.
std::vector<Polygon2d> alpha_shape_components(std::span<const Point2> points, double alpha);

/// Outer boundary of the largest alpha-shape component.
Polygon2d alpha_shape_boundary(std::span<const Point2> points, double alpha);

/// Convex hull (Andrew's monotone chain), counter-clockwise.
Polygon2d convex_hull(std::span<const Point2> points);

}  // namespace signsight
