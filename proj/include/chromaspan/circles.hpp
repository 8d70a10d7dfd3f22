#pragma once

// Minimal color-spanning circles from star polygons, and the smallest of them
// containing a query point.
//
// R(c) = max over colors of the distance from c to that color's nearest point is the
// radius of the smallest color-spanning circle centred at c. A circle is minimal when
// its centre is a local minimum of R: the nearest representatives on the circle are
// not all inside an open half-plane through the centre.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "chromaspan/answer.hpp"
#include "chromaspan/geometry.hpp"

namespace chromaspan {

struct MinimalCircle {
  Circle circle;
  std::vector<std::size_t> defining;  // color-nearest points on the boundary
};

/// R(c): radius of the smallest color-spanning circle centred at c.
inline double spanning_radius(Point c, std::span<const ColoredPoint> points, int k) {
  std::vector<double> nearest(static_cast<std::size_t>(k), std::numeric_limits<double>::infinity());
  for (const auto& p : points) {
    auto& d = nearest[static_cast<std::size_t>(p.color)];
    d = std::min(d, distance(c, p.pos()));
  }
  return *std::max_element(nearest.begin(), nearest.end());
}

/// The minimal circle centred at c, or none when c is not a local minimum of R.
inline std::optional<MinimalCircle> minimal_circle_at(Point c, std::span<const ColoredPoint> points, int k) {
  const double r = spanning_radius(c, points, k);
  const double tol = 1e-9 * std::max(1.0, r);
  if (r <= tol) {
    MinimalCircle m{{c, 0.0}, {}};
    for (std::size_t i = 0; i < points.size(); ++i)
      if (distance(c, points[i].pos()) <= tol) m.defining.push_back(i);
    return m;
  }
  // Nearest point of each color, kept when it sits on the circle.
  std::vector<double> nearest(static_cast<std::size_t>(k), std::numeric_limits<double>::infinity());
  for (const auto& p : points) {
    auto& d = nearest[static_cast<std::size_t>(p.color)];
    d = std::min(d, distance(c, p.pos()));
  }
  std::vector<std::size_t> defining;
  std::vector<double> angles;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = distance(c, points[i].pos());
    if (d <= nearest[static_cast<std::size_t>(points[i].color)] + tol && d >= r - tol) {
      defining.push_back(i);
      angles.push_back(std::atan2(points[i].y - c.y, points[i].x - c.x));
    }
  }
  if (angles.size() < 2) return std::nullopt;
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  if (gap > std::numbers::pi + 1e-9) return std::nullopt;
  return MinimalCircle{{c, r}, std::move(defining)};
}

// ---------------------------------------------------------------------------
// Voronoi cells by halfplane clipping

/// Convex polygon; label[i] names the site whose bisector carries edge v[i] -> v[i+1]
/// (kBoxEdge for the bounding box).
struct LabeledPolygon {
  static constexpr std::size_t kBoxEdge = std::numeric_limits<std::size_t>::max();
  std::vector<Point> v;
  std::vector<std::size_t> label;

  bool empty() const { return v.size() < 3; }

  /// Strictly inside (every edge at distance > tol).
  bool strictly_contains(Point p, double tol) const {
    if (empty()) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point a = v[i], b = v[(i + 1) % v.size()];
      const double len = distance(a, b);
      if (len == 0.0) continue;
      if (orient(a, b, p) / len <= tol) return false;
    }
    return true;
  }
  bool contains(Point p, double tol) const {
    if (empty()) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point a = v[i], b = v[(i + 1) % v.size()];
      const double len = distance(a, b);
      if (len == 0.0) continue;
      if (orient(a, b, p) / len < -tol) return false;
    }
    return true;
  }
};

inline LabeledPolygon box_polygon(Point lo, Point hi) {
  const auto b = LabeledPolygon::kBoxEdge;
  return {{lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}, {b, b, b, b}};
}

/// Keeps the part of `poly` closer to `own` than to `other`.
inline LabeledPolygon clip_bisector(const LabeledPolygon& poly, Point own, Point other, std::size_t label) {
  // n.x <= d with n = 2(other - own), d = |other|^2 - |own|^2
  const Point n = 2.0 * (other - own);
  const double d = norm2(other) - norm2(own);
  auto side = [&](Point p) { return dot(n, p) - d; };
  LabeledPolygon out;
  const std::size_t m = poly.v.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point cur = poly.v[i], nxt = poly.v[(i + 1) % m];
    const double sc = side(cur), sn = side(nxt);
    const bool ci = sc <= 0.0, cn = sn <= 0.0;
    auto cut = [&] { return cur + (sc / (sc - sn)) * (nxt - cur); };
    if (ci) {
      out.v.push_back(cur);
      out.label.push_back(poly.label[i]);
      if (!cn) {
        out.v.push_back(cut());
        out.label.push_back(label);
      }
    } else if (cn) {
      out.v.push_back(cut());
      out.label.push_back(poly.label[i]);
    }
  }
  if (out.v.size() < 3) return {};
  return out;
}

/// Cells of one site: its same-color Voronoi cell and, per other color, its cell in the
/// diagram of its color together with that color.
struct SiteCells {
  bool degenerate = false;  // a point of another color sits on the site
  LabeledPolygon own;       // vor_j(p)
  std::vector<LabeledPolygon> pair;  // indexed by color; empty for the site's own color
};

struct CellBox {
  Point lo, hi;
};

/// Bounding box 10x the point-set diameter around its centre.
inline CellBox cell_box(std::span<const ColoredPoint> points) {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi = -1.0 * lo;
  for (const auto& p : points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double diam = std::max(1.0, distance(lo, hi));
  const Point mid = 0.5 * (lo + hi);
  const double half = 5.0 * diam;
  return {{mid.x - half, mid.y - half}, {mid.x + half, mid.y + half}};
}

inline SiteCells build_site_cells(std::span<const ColoredPoint> points, int k, std::size_t i, const CellBox& box) {
  SiteCells cells;
  const Point own = points[i].pos();
  const int color = points[i].color;
  cells.own = box_polygon(box.lo, box.hi);
  for (std::size_t s = 0; s < points.size() && !cells.own.empty(); ++s) {
    if (s == i || points[s].color != color) continue;
    if (points[s].pos() == own) {
      // Duplicate sites: the first one owns the cell.
      if (s < i) cells.own = {};
      continue;
    }
    cells.own = clip_bisector(cells.own, own, points[s].pos(), s);
  }
  cells.pair.resize(static_cast<std::size_t>(k));
  for (int theta = 0; theta < k; ++theta) {
    if (theta == color) continue;
    LabeledPolygon cell = cells.own;
    for (std::size_t s = 0; s < points.size() && !cell.empty(); ++s) {
      if (points[s].color != theta) continue;
      if (points[s].pos() == own) {
        cells.degenerate = true;
        cell = {};
        break;
      }
      cell = clip_bisector(cell, own, points[s].pos(), s);
    }
    cells.pair[static_cast<std::size_t>(theta)] = std::move(cell);
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Star polygons

/// A maximal piece of the star boundary lying on one cell edge.
struct StarEdge {
  Point a, b;
  std::size_t label;        // site whose bisector carries the piece
  std::size_t start_other;  // at a: the label of the crossing edge, or kBoxEdge at a cell corner
  bool start_concave;       // a is a crossing of two cells
};

struct StarPolygon {
  std::size_t owner = 0;
  bool degenerate = false;
  std::vector<LabeledPolygon> cells;  // the nested pair cells whose union is the star
  std::vector<StarEdge> boundary;

  bool contains(Point p, double tol = 1e-9) const {
    return std::any_of(cells.begin(), cells.end(), [&](const LabeledPolygon& c) { return c.contains(p, tol); });
  }
};

namespace detail {

// Parameter along p->p+r of the crossing with q->q+s, with the crossing parameter on q.
inline std::optional<std::pair<double, double>> segment_cross(Point p, Point r, Point q, Point s) {
  const double den = cross(r, s);
  if (std::abs(den) <= 1e-14 * std::sqrt(norm2(r) * norm2(s))) return std::nullopt;
  const double t = cross(q - p, s) / den, u = cross(q - p, r) / den;
  if (t < -1e-12 || t > 1 + 1e-12 || u < -1e-12 || u > 1 + 1e-12) return std::nullopt;
  return std::pair{std::clamp(t, 0.0, 1.0), std::clamp(u, 0.0, 1.0)};
}

}  // namespace detail

inline StarPolygon star_polygon(std::span<const ColoredPoint> points, int k, std::size_t i, const CellBox& box) {
  StarPolygon star;
  star.owner = i;
  const SiteCells sc = build_site_cells(points, k, i, box);
  star.degenerate = sc.degenerate;
  if (sc.degenerate) return star;
  for (const auto& c : sc.pair)
    if (!c.empty()) star.cells.push_back(c);
  const double tol = 1e-9 * std::max(1.0, distance(box.lo, box.hi));

  struct Break {
    double t;
    std::size_t other;
    bool crossing;
  };
  for (std::size_t ci = 0; ci < star.cells.size(); ++ci) {
    const auto& cell = star.cells[ci];
    const std::size_t m = cell.v.size();
    for (std::size_t e = 0; e < m; ++e) {
      const Point a = cell.v[e], b = cell.v[(e + 1) % m];
      if (a == b) continue;
      std::vector<Break> breaks{{0.0, cell.label[(e + m - 1) % m], false}, {1.0, LabeledPolygon::kBoxEdge, false}};
      for (std::size_t cj = 0; cj < star.cells.size(); ++cj) {
        if (cj == ci) continue;
        const auto& other = star.cells[cj];
        for (std::size_t f = 0; f < other.v.size(); ++f) {
          const Point c = other.v[f], d = other.v[(f + 1) % other.v.size()];
          if (auto x = detail::segment_cross(a, b - a, c, d - c)) breaks.push_back({x->first, other.label[f], true});
        }
      }
      std::sort(breaks.begin(), breaks.end(), [](const Break& x, const Break& y) { return x.t < y.t; });
      for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        const double t0 = breaks[s].t, t1 = breaks[s + 1].t;
        if ((t1 - t0) * distance(a, b) <= tol) continue;
        const Point mid = a + (0.5 * (t0 + t1)) * (b - a);
        const bool covered = std::any_of(star.cells.begin(), star.cells.end(), [&](const LabeledPolygon& o) {
          return &o != &cell && o.strictly_contains(mid, tol);
        });
        if (covered) continue;
        star.boundary.push_back(
            {a + t0 * (b - a), a + t1 * (b - a), cell.label[e], breaks[s].other, breaks[s].crossing});
      }
    }
  }
  return star;
}

/// All minimal color-spanning circles, sorted by (radius, centre) and deduplicated.
///
/// Per site: feet of perpendiculars from the site onto star edges that land on the
/// edge (diametral circles), and concave star vertices where two bisectors of
/// different colors cross (circumcircles). Every candidate passes minimal_circle_at.
inline std::vector<MinimalCircle> minimal_circles(std::span<const ColoredPoint> points) {
  const int k = require_all_colors(points);
  std::vector<Point> centers;
  if (k == 1) {
    for (const auto& p : points) centers.push_back(p.pos());
  } else {
    const CellBox box = cell_box(points);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const StarPolygon star = star_polygon(points, k, i, box);
      const Point p = points[i].pos();
      if (star.degenerate) {
        centers.push_back(p);
        continue;
      }
      auto other_color = [&](std::size_t s) {
        return s != LabeledPolygon::kBoxEdge && points[s].color != points[i].color;
      };
      for (const auto& e : star.boundary) {
        if (!other_color(e.label)) continue;
        const Point foot = 0.5 * (p + points[e.label].pos());
        const Point ab = e.b - e.a;
        const double t = dot(foot - e.a, ab) / norm2(ab);
        const double slack = 1e-9 * std::max(1.0, std::sqrt(norm2(ab)));
        if (t >= -slack && t <= 1.0 + slack) centers.push_back(foot);
        if (e.start_concave && other_color(e.start_other) &&
            points[e.start_other].color != points[e.label].color)
          if (auto cc = circumcircle(p, points[e.label].pos(), points[e.start_other].pos()))
            centers.push_back(cc->center);
      }
    }
  }

  std::vector<MinimalCircle> out;
  for (const Point c : centers) {
    auto m = minimal_circle_at(c, points, k);
    if (!m) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const MinimalCircle& o) {
      return approx_eq(o.circle.radius, m->circle.radius) && approx_eq(o.circle.center.x, m->circle.center.x) &&
             approx_eq(o.circle.center.y, m->circle.center.y);
    });
    if (!dup) out.push_back(std::move(*m));
  }
  std::sort(out.begin(), out.end(), [](const MinimalCircle& a, const MinimalCircle& b) {
    if (a.circle.radius != b.circle.radius) return a.circle.radius < b.circle.radius;
    if (a.circle.center.x != b.circle.center.x) return a.circle.center.x < b.circle.center.x;
    return a.circle.center.y < b.circle.center.y;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Radius-ordered containment search

/// Balanced tree over circles sorted by radius. Each node answers "does some circle in
/// my range contain q" by testing q's lift against the range's planes; the query walks
/// down towards the leftmost (smallest) range that still answers yes.
class CircleContainmentTree {
 public:
  CircleContainmentTree() = default;
  explicit CircleContainmentTree(std::vector<MinimalCircle> circles) : circles_(std::move(circles)) {
    std::stable_sort(circles_.begin(), circles_.end(), [](const MinimalCircle& a, const MinimalCircle& b) {
      return a.circle.radius < b.circle.radius;
    });
    planes_.reserve(circles_.size());
    for (const auto& c : circles_) planes_.push_back(lift_circle(c.circle));
  }

  const std::vector<MinimalCircle>& circles() const { return circles_; }

  /// Index (in radius order) of the smallest circle containing q.
  std::optional<std::size_t> smallest_containing(Point q) const {
    std::size_t lo = 0, hi = circles_.size();
    if (!any_contains(lo, hi, q)) return std::nullopt;
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (any_contains(lo, mid, q)) hi = mid;
      else lo = mid;
    }
    return lo;
  }

 private:
  bool any_contains(std::size_t lo, std::size_t hi, Point q) const {
    for (std::size_t i = lo; i < hi; ++i)
      if (point_below_lift(q, planes_[i])) return true;
    return false;
  }

  std::vector<MinimalCircle> circles_;
  std::vector<LiftedPlane> planes_;
};

/// Type-I circle queries: the smallest minimal circle containing q.
class ScscType1Index {
 public:
  explicit ScscType1Index(std::span<const ColoredPoint> points) : tree_(minimal_circles(points)) {}
  explicit ScscType1Index(std::vector<MinimalCircle> circles) : tree_(std::move(circles)) {}

  const std::vector<MinimalCircle>& circles() const { return tree_.circles(); }

  std::optional<QueryAnswer> query(Point q) const {
    const auto id = tree_.smallest_containing(q);
    if (!id) return std::nullopt;
    const Circle& c = tree_.circles()[*id].circle;
    return QueryAnswer{ObjectKind::scsc, c.radius, c, Provenance::contained, "minimal-circle"};
  }

 private:
  CircleContainmentTree tree_;
};

}  // namespace chromaspan
