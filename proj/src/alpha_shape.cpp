#include "signsight/alpha_shape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace signsight {
namespace {

using Real = long double;

Real orient(const Point2& a, const Point2& b, const Point2& c) {
  return (Real(b.x()) - a.x()) * (Real(c.y()) - a.y()) - (Real(b.y()) - a.y()) * (Real(c.x()) - a.x());
}

// > 0 when d lies inside the circumcircle of counter-clockwise (a, b, c).
Real incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const Real adx = Real(a.x()) - d.x(), ady = Real(a.y()) - d.y();
  const Real bdx = Real(b.x()) - d.x(), bdy = Real(b.y()) - d.y();
  const Real cdx = Real(c.x()) - d.x(), cdy = Real(c.y()) - d.y();
  const Real ad = adx * adx + ady * ady;
  const Real bd = bdx * bdx + bdy * bdy;
  const Real cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int order) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << (order - 1); s > 0; s >>= 1) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += std::uint64_t(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

std::vector<Point2> deduplicate(std::span<const Point2> in) {
  std::vector<Point2> pts(in.begin(), in.end());
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) { return a == b; }),
            pts.end());
  return pts;
}

void require_non_degenerate(const std::vector<Point2>& pts) {
  if (pts.size() < 3) {
    throw Error(ErrorKind::DegeneratePolygon, "fewer than 3 distinct points");
  }
  const Point2& p0 = pts.front();
  std::size_t far = 0;
  double far_d = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = (pts[i] - p0).squaredNorm();
    if (d > far_d) {
      far_d = d;
      far = i;
    }
  }
  const Point2 dir = (pts[far] - p0) / std::sqrt(far_d);
  double off = 0;
  for (const auto& p : pts) off = std::max(off, std::abs(cross2(dir, p - p0)));
  if (off <= 1e-12 * std::sqrt(far_d)) {
    throw Error(ErrorKind::DegeneratePolygon, "all points are collinear");
  }
}

class Builder {
public:
  explicit Builder(std::vector<Point2> pts) : n_(static_cast<int>(pts.size())), pts_(std::move(pts)) {}

  Triangulation run() {
    add_super_triangle();
    for (int idx : insertion_order()) insert(idx);
    return extract();
  }

private:
  void add_super_triangle() {
    Eigen::AlignedBox2d box;
    for (int i = 0; i < n_; ++i) box.extend(pts_[i]);
    const Point2 c = box.center();
    const double r = std::max(box.diagonal().norm(), 1e-9) * 1000.0;
    for (int k = 0; k < 3; ++k) {
      const double a = deg_to_rad(90.0 + 120.0 * k);
      pts_.push_back(c + r * Point2(std::cos(a), std::sin(a)));
    }
    tris_.push_back({n_, n_ + 1, n_ + 2});
    nbrs_.push_back({-1, -1, -1});
    mark_.push_back(0);
    last_ = 0;
  }

  std::vector<int> insertion_order() const {
    Eigen::AlignedBox2d box;
    for (int i = 0; i < n_; ++i) box.extend(pts_[i]);
    const Point2 lo = box.min();
    const Point2 ext = (box.max() - lo).cwiseMax(1e-300);
    constexpr int kOrder = 16;
    const double scale = double((1u << kOrder) - 1);
    std::vector<std::uint64_t> key(n_);
    for (int i = 0; i < n_; ++i) {
      const Point2 u = (pts_[i] - lo).cwiseQuotient(ext) * scale;
      key[i] = hilbert_index(static_cast<std::uint32_t>(u.x()), static_cast<std::uint32_t>(u.y()), kOrder);
    }
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
    return order;
  }

  bool contains_on_left(int t, int e, const Point2& p) const {
    const auto& v = tris_[t];
    return orient(pts_[v[(e + 1) % 3]], pts_[v[(e + 2) % 3]], p) >= 0;
  }

  int locate(const Point2& p) {
    int t = last_;
    int rot = 0;
    const std::size_t limit = 4 * tris_.size() + 16;
    for (std::size_t step = 0; step < limit; ++step) {
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const int e = (rot + k) % 3;
        if (!contains_on_left(t, e, p)) {
          const int nb = nbrs_[t][e];
          if (nb < 0) break;
          t = nb;
          moved = true;
          break;
        }
      }
      if (!moved) return t;
      rot = (rot + 1) % 3;
    }
    for (int s = 0; s < static_cast<int>(tris_.size()); ++s) {
      if (alive(s) && contains_on_left(s, 0, p) && contains_on_left(s, 1, p) && contains_on_left(s, 2, p)) {
        return s;
      }
    }
    throw Error(ErrorKind::DegeneratePolygon, "point location failed");
  }

  bool alive(int t) const { return tris_[t][0] >= 0; }

  // Super vertices are treated as points at infinity, so circles through
  // them degenerate to half-planes and hull edges come out Delaunay.
  bool in_circle(int t, const Point2& p) const {
    const auto& v = tris_[t];
    int supers = 0, first = 0;
    for (int k = 0; k < 3; ++k) {
      if (v[k] >= n_) {
        if (supers++ == 0) first = k;
      }
    }
    if (supers == 0) return incircle(pts_[v[0]], pts_[v[1]], pts_[v[2]], p) > 0;
    if (supers == 3) return true;
    if (supers == 1) {
      const Point2& a = pts_[v[(first + 1) % 3]];
      const Point2& b = pts_[v[(first + 2) % 3]];
      const Real o = orient(a, b, p);
      if (o != 0) return o > 0;
      return (p - a).dot(p - b) < 0;
    }
    int fin = 0;
    for (int k = 0; k < 3; ++k) {
      if (v[k] < n_) fin = k;
    }
    const Point2& a = pts_[v[fin]];
    const Point2 d = pts_[v[(fin + 2) % 3]] - pts_[v[(fin + 1) % 3]];
    return orient(a, a + d, p) < 0;
  }

  void insert(int pi) {
    const Point2& p = pts_[pi];
    const int t0 = locate(p);
    ++stamp_;
    cavity_.clear();
    auto add = [&](int t) {
      mark_[t] = stamp_;
      cavity_.push_back(t);
    };
    add(t0);
    for (std::size_t c = 0; c < cavity_.size(); ++c) {
      for (int e = 0; e < 3; ++e) {
        const int nb = nbrs_[cavity_[c]][e];
        if (nb >= 0 && mark_[nb] != stamp_ && in_circle(nb, p)) add(nb);
      }
    }

    // Grow the cavity until every boundary edge sees p strictly on its left,
    // which keeps the fan of new triangles valid under rounding.
    struct BoundaryEdge {
      int a, b, outer;
    };
    std::vector<BoundaryEdge> boundary;
    for (bool grown = true; grown;) {
      grown = false;
      boundary.clear();
      for (std::size_t c = 0; c < cavity_.size() && !grown; ++c) {
        const int t = cavity_[c];
        for (int e = 0; e < 3; ++e) {
          const int nb = nbrs_[t][e];
          if (nb >= 0 && mark_[nb] == stamp_) continue;
          const int a = tris_[t][(e + 1) % 3];
          const int b = tris_[t][(e + 2) % 3];
          if (orient(pts_[a], pts_[b], p) <= 0 && nb >= 0) {
            add(nb);
            grown = true;
            break;
          }
          boundary.push_back({a, b, nb});
        }
      }
    }

    std::vector<int> slots(cavity_.begin(), cavity_.end());
    for (int t : slots) tris_[t] = {-1, -1, -1};
    while (slots.size() < boundary.size()) {
      slots.push_back(static_cast<int>(tris_.size()));
      tris_.push_back({-1, -1, -1});
      nbrs_.push_back({-1, -1, -1});
      mark_.push_back(0);
    }
    for (std::size_t k = boundary.size(); k < slots.size(); ++k) {
      tris_[slots[k]] = {-1, -1, -1};
    }

    start_at_.clear();
    end_at_.clear();
    for (std::size_t k = 0; k < boundary.size(); ++k) {
      const auto& be = boundary[k];
      const int id = slots[k];
      tris_[id] = {be.a, be.b, pi};
      nbrs_[id] = {-1, -1, be.outer};
      if (be.outer >= 0) {
        auto& ov = tris_[be.outer];
        for (int e = 0; e < 3; ++e) {
          if (ov[e] != be.a && ov[e] != be.b) nbrs_[be.outer][e] = id;
        }
      }
      start_at_[be.a] = id;
      end_at_[be.b] = id;
    }
    for (std::size_t k = 0; k < boundary.size(); ++k) {
      const int id = slots[k];
      nbrs_[id][0] = start_at_.at(boundary[k].b);
      nbrs_[id][1] = end_at_.at(boundary[k].a);
    }
    last_ = slots.front();
  }

  Triangulation extract() {
    Triangulation out;
    std::vector<int> remap(tris_.size(), -1);
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (!alive(static_cast<int>(t))) continue;
      const auto& v = tris_[t];
      if (v[0] >= n_ || v[1] >= n_ || v[2] >= n_) continue;
      remap[t] = static_cast<int>(out.triangles.size());
      out.triangles.push_back(v);
    }
    out.neighbors.reserve(out.triangles.size());
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (remap[t] < 0) continue;
      std::array<int, 3> nb{};
      for (int e = 0; e < 3; ++e) nb[e] = nbrs_[t][e] >= 0 ? remap[nbrs_[t][e]] : -1;
      out.neighbors.push_back(nb);
    }
    pts_.resize(n_);
    out.points = std::move(pts_);
    return out;
  }

  int n_;
  std::vector<Point2> pts_;
  std::vector<std::array<int, 3>> tris_;
  std::vector<std::array<int, 3>> nbrs_;
  std::vector<unsigned> mark_;
  unsigned stamp_ = 0;
  int last_ = 0;
  std::vector<int> cavity_;
  std::unordered_map<int, int> start_at_;
  std::unordered_map<int, int> end_at_;
};

double circumradius(const Point2& a, const Point2& b, const Point2& c) {
  const double area2 = std::abs(static_cast<double>(orient(a, b, c)));
  if (area2 <= 0) return std::numeric_limits<double>::infinity();
  return (a - b).norm() * (b - c).norm() * (c - a).norm() / (2.0 * area2);
}

// Walks one boundary loop. At a pinch vertex the next edge is the first one
// met rotating clockwise from the reversed incoming edge, so loops stay simple.
std::vector<std::vector<int>> trace_loops(const std::vector<std::pair<int, int>>& edges,
                                          const std::vector<Point2>& pts) {
  std::unordered_map<int, std::vector<int>> outgoing;
  for (std::size_t k = 0; k < edges.size(); ++k) outgoing[edges[k].first].push_back(static_cast<int>(k));
  std::vector<char> used(edges.size(), 0);
  std::vector<std::vector<int>> loops;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    if (used[start]) continue;
    std::vector<int> loop;
    int cur = static_cast<int>(start);
    while (!used[cur]) {
      used[cur] = 1;
      const int from = edges[cur].first;
      const int to = edges[cur].second;
      loop.push_back(from);
      const auto& cands = outgoing[to];
      int next = -1;
      double best = std::numeric_limits<double>::infinity();
      const Point2 back = pts[from] - pts[to];
      for (int c : cands) {
        if (used[c]) continue;
        const Point2 out = pts[edges[c].second] - pts[to];
        double cw = -std::atan2(cross2(back, out), back.dot(out));
        if (cw <= 0) cw += 2 * kPi;
        if (cw < best) {
          best = cw;
          next = c;
        }
      }
      if (next < 0) break;
      cur = next;
    }
    if (loop.size() >= 3) loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace

Triangulation delaunay_triangulation(std::span<const Point2> points) {
  std::vector<Point2> pts = deduplicate(points);
  require_non_degenerate(pts);
  return Builder(std::move(pts)).run();
}

std::vector<Polygon2d> alpha_shape_components(std::span<const Point2> points, double alpha) {
  if (!(alpha > 0)) throw Error(ErrorKind::DegeneratePolygon, "alpha must be positive");
  const Triangulation tri = delaunay_triangulation(points);
  const auto& P = tri.points;
  const std::size_t nt = tri.triangles.size();

  std::vector<char> keep(nt, 0);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& v = tri.triangles[t];
    keep[t] = circumradius(P[v[0]], P[v[1]], P[v[2]]) <= alpha;
  }

  std::vector<int> comp(nt, -1);
  std::vector<Polygon2d> result;
  std::vector<int> stack;
  for (std::size_t seed = 0; seed < nt; ++seed) {
    if (!keep[seed] || comp[seed] >= 0) continue;
    const int id = static_cast<int>(seed);
    std::vector<std::pair<int, int>> edges;
    stack.assign(1, id);
    comp[seed] = id;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int e = 0; e < 3; ++e) {
        const int nb = tri.neighbors[t][e];
        if (nb >= 0 && keep[nb]) {
          if (comp[nb] < 0) {
            comp[nb] = id;
            stack.push_back(nb);
          }
        } else {
          edges.emplace_back(tri.triangles[t][(e + 1) % 3], tri.triangles[t][(e + 2) % 3]);
        }
      }
    }
    double best_area = 0;
    std::vector<Point2> best;
    for (const auto& loop : trace_loops(edges, P)) {
      std::vector<Point2> ring;
      ring.reserve(loop.size());
      for (int v : loop) ring.push_back(P[v]);
      double twice = 0;
      for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) twice += cross2(ring[j], ring[i]);
      if (twice / 2 > best_area) {
        best_area = twice / 2;
        best = std::move(ring);
      }
    }
    if (best_area > 0) result.emplace_back(std::move(best));
  }
  if (result.empty()) {
    throw Error(ErrorKind::DegeneratePolygon, "no triangle passes the alpha criterion");
  }
  std::stable_sort(result.begin(), result.end(),
                   [](const Polygon2d& a, const Polygon2d& b) { return polygon_area(a) > polygon_area(b); });
  return result;
}

Polygon2d alpha_shape_boundary(std::span<const Point2> points, double alpha) {
  return alpha_shape_components(points, alpha).front();
}

Polygon2d convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts = deduplicate(points);
  require_non_degenerate(pts);
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return Polygon2d(std::move(hull));
}

}  // namespace signsight
