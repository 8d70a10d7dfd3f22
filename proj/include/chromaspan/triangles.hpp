#pragma once

// Minimal color-spanning apex-up equilateral triangles (horizontal base) and the
// smallest such triangle containing a query point.
//
// A triangle is stored as three line levels (see FrameTriangle). For a query q each
// triangle falls in one of seven regions: inside, one of three edge slabs (exactly one
// level violated) or one of three vertex cones (two levels violated). The smallest
// triangle containing the source and q keeps the untouched levels and moves the
// violated ones through q, so each region is a dominance query on the levels with an
// affine size.

#include <algorithm>
#include <array>
#include <cstddef>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "chromaspan/aggregate_index.hpp"
#include "chromaspan/answer.hpp"
#include "chromaspan/geometry.hpp"
#include "chromaspan/rectangles.hpp"  // detail::make_index

namespace chromaspan {

/// Smallest apex-up triangle containing t and q.
inline FrameTriangle extend_triangle(const FrameTriangle& t, Point q) {
  return {std::min(t.base, q.y), std::max(t.left, frame_beta(q)), std::max(t.right, frame_alpha(q))};
}

/// Throws std::logic_error if the frame predicate disagrees with orientation tests.
inline void validate_frame_conventions() {
  std::mt19937_64 rng(0x5ca1ab1e);
  std::uniform_real_distribution<double> u(-10.0, 10.0), side(0.1, 5.0);
  for (int i = 0; i < 256; ++i) {
    const FrameTriangle t = frame_triangle_from({u(rng), u(rng)}, side(rng));
    if (!point_in_triangle_frames(t.apex(), t) || !point_in_triangle_direct(t.apex(), t))
      throw std::logic_error("triangle frame conventions: apex not inside");
    const Point p{u(rng), u(rng)};
    const Point bl = t.bottom_left(), br = t.bottom_right(), ap = t.apex();
    // Skip points too close to an edge for either predicate to be decisive.
    const double margin = 1e-6;
    const double s = t.side();
    if (std::abs(orient(bl, br, p)) < margin * s || std::abs(orient(br, ap, p)) < margin * s ||
        std::abs(orient(ap, bl, p)) < margin * s)
      continue;
    if (point_in_triangle_frames(p, t) != point_in_triangle_direct(p, t))
      throw std::logic_error("triangle frame conventions disagree with orientation tests");

    // Region formulas: the level(s) violated by p decide which affine size applies.
    const double y = p.y, b = frame_beta(p), a = frame_alpha(p);
    const bool vb = y < t.base, vl = b > t.left, vr = a > t.right;
    double size = t.side();
    if (!vb && vl && vr) size = 2.0 * (y - t.base) / std::numbers::sqrt3;
    else if (vb && vl && !vr) size = 2.0 * (t.right - a) / std::numbers::sqrt3;
    else if (vb && !vl && vr) size = 2.0 * (t.left - b) / std::numbers::sqrt3;
    else if (!vb && !vl && vr) size = 2.0 * (a + (t.left - t.base)) / std::numbers::sqrt3;
    else if (!vb && vl && !vr) size = 2.0 * (b + (t.right - t.base)) / std::numbers::sqrt3;
    else if (vb && !vl && !vr) size = 2.0 * ((t.left + t.right) - y) / std::numbers::sqrt3;
    const double direct = FrameTriangle{std::min(t.base, y), std::max(t.left, b), std::max(t.right, a)}.side();
    if (vb && vl && vr) throw std::logic_error("triangle frame conventions: point violates all three levels");
    if (!approx_eq(size, direct)) throw std::logic_error("triangle region formula disagrees with direct extension");
  }
}

namespace detail {

struct FramedPoint {
  double y, beta, alpha;
  int color;
};

inline std::vector<FramedPoint> framed(std::span<const ColoredPoint> points) {
  std::vector<FramedPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back({p.y, frame_beta(p.pos()), frame_alpha(p.pos()), p.color});
  return out;
}

inline bool triangle_covers(const std::vector<FramedPoint>& pts, int k, double base, double left, double right,
                            int strict_side) {
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  int covered = 0;
  for (const auto& p : pts) {
    if (p.y < base || p.beta > left || p.alpha > right) continue;
    if (strict_side == 0 && p.y == base) continue;
    if (strict_side == 1 && p.beta == left) continue;
    if (strict_side == 2 && p.alpha == right) continue;
    if (!seen[static_cast<std::size_t>(p.color)]) {
      seen[static_cast<std::size_t>(p.color)] = true;
      ++covered;
    }
  }
  return covered == k;
}

}  // namespace detail

/// Shrink test: spans all colors and moving any one level inward loses a color.
inline bool is_minimal_triangle(const FrameTriangle& t, std::span<const ColoredPoint> points, int k) {
  const auto pts = detail::framed(points);
  if (!detail::triangle_covers(pts, k, t.base, t.left, t.right, -1)) return false;
  for (int side = 0; side < 3; ++side)
    if (detail::triangle_covers(pts, k, t.base, t.left, t.right, side)) return false;
  return true;
}

/// All minimal color-spanning apex-up triangles. Base and left-arm levels range over
/// the points' levels; the right-arm level is the smallest one that completes the colors.
inline std::vector<FrameTriangle> enumerate_minimal_triangles(std::span<const ColoredPoint> points) {
  const int k = require_all_colors(points);
  const auto pts = detail::framed(points);
  std::vector<double> bases, lefts;
  for (const auto& p : pts) {
    bases.push_back(p.y);
    lefts.push_back(p.beta);
  }
  for (auto* v : {&bases, &lefts}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }

  std::set<std::tuple<double, double, double>> seen;
  std::vector<FrameTriangle> out;
  std::vector<const detail::FramedPoint*> cand;
  std::vector<int> count(static_cast<std::size_t>(k));
  for (double base : bases) {
    for (double left : lefts) {
      cand.clear();
      for (const auto& p : pts)
        if (p.y >= base && p.beta <= left) cand.push_back(&p);
      std::sort(cand.begin(), cand.end(), [](auto* a, auto* b) { return a->alpha < b->alpha; });
      std::fill(count.begin(), count.end(), 0);
      int covered = 0;
      std::size_t i = 0;
      while (i < cand.size() && covered < k)
        if (count[static_cast<std::size_t>(cand[i++]->color)]++ == 0) ++covered;
      if (covered < k) continue;
      const FrameTriangle t{base, left, cand[i - 1]->alpha};
      if (!detail::triangle_covers(pts, k, t.base, t.left, t.right, 0) &&
          !detail::triangle_covers(pts, k, t.base, t.left, t.right, 1) &&
          !detail::triangle_covers(pts, k, t.base, t.left, t.right, 2) &&
          seen.emplace(t.base, t.left, t.right).second)
        out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end(), [](const FrameTriangle& a, const FrameTriangle& b) {
    return std::tie(a.base, a.left, a.right) < std::tie(b.base, b.left, b.right);
  });
  return out;
}

class ScstIndex {
 public:
  explicit ScstIndex(std::span<const ColoredPoint> points) : ScstIndex(enumerate_minimal_triangles(points)) {}

  explicit ScstIndex(std::vector<FrameTriangle> triangles) : triangles_(std::move(triangles)) {
    static const bool frames_ok = (validate_frame_conventions(), true);
    (void)frames_ok;
    using detail::make_index;
    const auto mn = Extremum::min;
    auto levels = [](const FrameTriangle& t) { return std::array{t.base, t.left, t.right}; };
    contained_ = make_index<3>(triangles_, mn, levels, [](const FrameTriangle& t) { return t.side(); });
    // Edge slabs: y_alpha of the bottom-left vertex is base - left, and so on.
    right_edge_ = make_index<3>(triangles_, mn, levels, [](const FrameTriangle& t) { return t.left - t.base; });
    left_edge_ = make_index<3>(triangles_, mn, levels, [](const FrameTriangle& t) { return t.right - t.base; });
    base_edge_ = make_index<3>(triangles_, mn, levels, [](const FrameTriangle& t) { return t.left + t.right; });
    // Vertex cones: q becomes the apex, bottom-left or bottom-right vertex.
    apex_cone_ = make_index<3>(triangles_, mn, levels, [](const FrameTriangle& t) { return -t.base; });
    left_cone_ = make_index<3>(triangles_, mn, levels, [](const FrameTriangle& t) { return t.right; });
    right_cone_ = make_index<3>(triangles_, mn, levels, [](const FrameTriangle& t) { return t.left; });
  }

  const std::vector<FrameTriangle>& minimal_triangles() const { return triangles_; }

  std::optional<QueryAnswer> query_contained(Point q) const {
    const auto f = frames(q);
    const auto hit = contained_.best({le(f[0]), ge(f[1]), ge(f[2])});
    if (!hit) return std::nullopt;
    return QueryAnswer{ObjectKind::scst, hit->key, triangles_[hit->payload], Provenance::contained, "contained"};
  }

  /// Vertex cones (two levels violated).
  std::optional<QueryAnswer> query_vertex_regions(Point q) const {
    const auto [y, b, a] = frames(q);
    std::optional<QueryAnswer> best;
    keep_smaller(best, extend(apex_cone_.best({le(y), lt(b), lt(a)}), y, q, "cone-apex"));
    keep_smaller(best, extend(left_cone_.best({gt(y), lt(b), ge(a)}), -a, q, "cone-bottom-left"));
    keep_smaller(best, extend(right_cone_.best({gt(y), ge(b), lt(a)}), -b, q, "cone-bottom-right"));
    return best;
  }

  /// Edge slabs (one level violated).
  std::optional<QueryAnswer> query_edge_regions(Point q) const {
    const auto [y, b, a] = frames(q);
    std::optional<QueryAnswer> best;
    keep_smaller(best, extend(right_edge_.best({le(y), ge(b), lt(a)}), a, q, "edge-right"));
    keep_smaller(best, extend(left_edge_.best({le(y), lt(b), ge(a)}), b, q, "edge-left"));
    keep_smaller(best, extend(base_edge_.best({gt(y), ge(b), ge(a)}), -y, q, "edge-base"));
    return best;
  }

  QueryAnswer query(Point q) const {
    std::optional<QueryAnswer> best = query_contained(q);
    keep_smaller(best, query_vertex_regions(q));
    keep_smaller(best, query_edge_regions(q));
    return *best;
  }

 private:
  static std::array<double, 3> frames(Point q) { return {q.y, frame_beta(q), frame_alpha(q)}; }

  // size = 2 (key + offset) / sqrt(3)
  std::optional<QueryAnswer> extend(const std::optional<Hit>& hit, double offset, Point q,
                                    const char* family) const {
    if (!hit) return std::nullopt;
    const double size = std::max(0.0, 2.0 * (hit->key + offset) / std::numbers::sqrt3);
    return QueryAnswer{ObjectKind::scst, size, extend_triangle(triangles_[hit->payload], q),
                       Provenance::boundary_extension, family};
  }

  std::vector<FrameTriangle> triangles_;
  DominanceIndex<3> contained_;
  DominanceIndex<3> right_edge_, left_edge_, base_edge_;
  DominanceIndex<3> apex_cone_, left_cone_, right_cone_;
};

}  // namespace chromaspan
