#pragma once

// Brute-force references for every localized query. Deliberately share no index code
// with the fast paths: each one minimizes directly over boundary-level candidates.

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

namespace chromaspan::oracle {

struct OracleConfig {
  std::size_t max_n = 60;
  int max_k = 8;
  double tolerance = 1e-9;
  double grid_step = 1e-3;
  unsigned long long seed = 1;
};

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool all_colors(std::span<const ColoredPoint> pts, int k, auto&& inside) {
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  int n = 0;
  for (const auto& p : pts)
    if (!seen[static_cast<std::size_t>(p.color)] && inside(p)) {
      seen[static_cast<std::size_t>(p.color)] = 1;
      ++n;
    }
  return n == k;
}

inline std::vector<double> levels(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Smallest top >= floor such that the points (already filtered) with y in [bottom, top]
// cover all colors; the candidates are sorted by y.
inline double smallest_cover_top(const std::vector<ColoredPoint>& by_y, int k, double bottom, double floor) {
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  int n = 0;
  for (const auto& p : by_y) {
    if (p.y < bottom) continue;
    if (!seen[static_cast<std::size_t>(p.color)]) {
      seen[static_cast<std::size_t>(p.color)] = 1;
      if (++n == k) return std::max(p.y, floor);
    }
  }
  return kInf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Intervals

struct IntervalResult {
  double length;
  Interval interval;
};

/// min length over [a, b] containing q with a, b in the coordinates or q.
inline IntervalResult oracle_scsi(std::span<const ColoredPoint> points, double q) {
  const int k = require_all_colors(points);
  std::vector<ColoredPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  std::vector<double> lefts{q};
  for (const auto& p : points)
    if (p.x <= q) lefts.push_back(p.x);
  IntervalResult best{detail::kInf, {}};
  for (double a : detail::levels(lefts)) {
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    int n = 0;
    for (const auto& p : sorted) {
      if (p.x < a) continue;
      if (!seen[static_cast<std::size_t>(p.color)]) {
        seen[static_cast<std::size_t>(p.color)] = 1;
        if (++n == k) {
          const double b = std::max(p.x, q);
          if (b - a < best.length) best = {b - a, {a, b}};
          break;
        }
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Rectangles and squares: x-boundaries from the coordinates and q, then the tightest
// y-window containing q per bottom level.

struct RectResult {
  double size;
  Rect rect;  // the color-spanning bounding box containing q
};

namespace detail {

template <class Measure>
RectResult best_box(std::span<const ColoredPoint> points, Point q, Measure measure) {
  const int k = require_all_colors(points);
  std::vector<double> xs{q.x}, ys{q.y};
  for (const auto& p : points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  xs = levels(xs);
  ys = levels(ys);
  RectResult best{kInf, {}};
  for (double l : xs) {
    if (l > q.x) break;
    for (double r : xs) {
      if (r < q.x || r < l) continue;
      std::vector<ColoredPoint> slab;
      for (const auto& p : points)
        if (p.x >= l && p.x <= r) slab.push_back(p);
      std::sort(slab.begin(), slab.end(), [](const auto& a, const auto& b) { return a.y < b.y; });
      for (double b : ys) {
        if (b > q.y) break;
        const double t = smallest_cover_top(slab, k, b, q.y);
        if (t == kInf) break;
        const Rect box{l, r, b, t};
        const double s = measure(box);
        if (s < best.size) best = {s, box};
      }
    }
  }
  return best;
}

}  // namespace detail

inline RectResult oracle_scsr(std::span<const ColoredPoint> points, Point q) {
  return detail::best_box(points, q, [](const Rect& r) { return r.width() + r.height(); });
}

struct SquareResult {
  double side;
  Square square;
};

/// The smallest square around a set has side max(w, h) of its bounding box.
inline SquareResult oracle_scss(std::span<const ColoredPoint> points, Point q) {
  const auto box = detail::best_box(points, q, [](const Rect& r) { return std::max(r.width(), r.height()); });
  const Rect& r = box.rect;
  const double s = box.size;
  return {s, {r.l - (s - r.width()) / 2, r.b - (s - r.height()) / 2, s}};
}

// ---------------------------------------------------------------------------
// Apex-up equilateral triangles

struct TriangleResult {
  double side;
  FrameTriangle triangle;
};

inline TriangleResult oracle_scst(std::span<const ColoredPoint> points, Point q) {
  const int k = require_all_colors(points);
  // Direct projections onto the three edge normals (independent of the frame helpers).
  const double s = std::sqrt(3.0) / 2.0;
  auto y_of = [](Point p) { return p.y; };
  auto left_of = [s](Point p) { return 0.5 * p.y - s * p.x; };
  auto right_of = [s](Point p) { return 0.5 * p.y + s * p.x; };

  std::vector<double> bases{y_of(q)}, lefts{left_of(q)};
  for (const auto& p : points) {
    bases.push_back(y_of(p.pos()));
    lefts.push_back(left_of(p.pos()));
  }
  TriangleResult best{detail::kInf, {}};
  for (double base : detail::levels(bases)) {
    if (base > y_of(q)) break;
    for (double left : detail::levels(lefts)) {
      if (left < left_of(q)) continue;
      std::vector<std::pair<double, int>> cand;
      for (const auto& p : points)
        if (y_of(p.pos()) >= base && left_of(p.pos()) <= left) cand.push_back({right_of(p.pos()), p.color});
      std::sort(cand.begin(), cand.end());
      std::vector<char> seen(static_cast<std::size_t>(k), 0);
      int n = 0;
      for (const auto& [r, c] : cand) {
        if (seen[static_cast<std::size_t>(c)]) continue;
        seen[static_cast<std::size_t>(c)] = 1;
        if (++n == k) {
          const double right = std::max(r, right_of(q));
          const double side = std::max(0.0, 2.0 * (left + right - base) / std::sqrt(3.0));
          if (side < best.side) best = {side, {base, left, right}};
          break;
        }
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Circles

struct CircleResult {
  double radius;
  Circle circle;
};

namespace detail {

inline bool in_disk(Point c, double r, Point p) { return distance(c, p) <= r + 1e-9 * std::max(1.0, r); }

inline std::optional<Circle> circum(Point a, Point b, Point c) {
  const double ax = a.x - c.x, ay = a.y - c.y, bx = b.x - c.x, by = b.y - c.y;
  const double d = 2.0 * (ax * by - ay * bx);
  if (std::abs(d) <= 1e-12 * std::max(1.0, (ax * ax + ay * ay) * (bx * bx + by * by))) return std::nullopt;
  const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by;
  const Point o{c.x + (by * a2 - ay * b2) / d, c.y + (ax * b2 - bx * a2) / d};
  return Circle{o, distance(o, a)};
}

}  // namespace detail

/// Smallest color-spanning circle containing q: the enclosing circle of q and one point
/// per color, fixed by two (diametral) or three (circumscribed) of them.
inline CircleResult oracle_scsc_exact(std::span<const ColoredPoint> points, Point q) {
  const int k = require_all_colors(points);
  std::vector<Point> all{q};
  for (const auto& p : points) all.push_back(p.pos());
  CircleResult best{detail::kInf, {}};
  auto consider = [&](Point c, double r) {
    if (r >= best.radius || !detail::in_disk(c, r, q)) return;
    if (detail::all_colors(points, k, [&](const ColoredPoint& p) { return detail::in_disk(c, r, p.pos()); }))
      best = {r, {c, r}};
  };
  const std::size_t m = all.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const Point c = 0.5 * (all[i] + all[j]);
      consider(c, 0.5 * distance(all[i], all[j]));
      for (std::size_t l = j + 1; l < m; ++l)
        if (auto cc = detail::circum(all[i], all[j], all[l])) consider(cc->center, cc->radius);
    }
  return best;
}

struct ConstrainedResult {
  double radius;
  Point center;
};

/// min over centres c on y = line_y of max(|c - q|, R(c)).
///
/// Every curve along the line is x^2 plus a linear term, so the objective minus x^2 is
/// piecewise linear: its minimum sits at a crossing of two curves (a bisector hitting
/// the line) or at the foot of a perpendicular. Each candidate is evaluated directly
/// and then polished by golden-section search in the neighbouring gaps.
inline ConstrainedResult oracle_constrained_scsc(std::span<const ColoredPoint> points, double line_y, Point q) {
  const int k = require_all_colors(points);
  auto objective = [&](double x) {
    const Point c{x, line_y};
    std::vector<double> nearest(static_cast<std::size_t>(k), detail::kInf);
    for (const auto& p : points) {
      auto& d = nearest[static_cast<std::size_t>(p.color)];
      d = std::min(d, distance(c, p.pos()));
    }
    return std::max(distance(c, q), *std::max_element(nearest.begin(), nearest.end()));
  };
  std::vector<Point> all{q};
  for (const auto& p : points) all.push_back(p.pos());
  std::vector<double> xs;
  for (std::size_t i = 0; i < all.size(); ++i) {
    xs.push_back(all[i].x);
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      // |(x,L) - a|^2 = |(x,L) - b|^2
      const Point a = all[i], b = all[j];
      if (a.x == b.x) continue;
      const double ha = a.y - line_y, hb = b.y - line_y;
      xs.push_back((b.x * b.x + hb * hb - a.x * a.x - ha * ha) / (2.0 * (b.x - a.x)));
    }
  }
  xs = detail::levels(xs);
  ConstrainedResult best{detail::kInf, {}};
  for (double x : xs) {
    const double v = objective(x);
    if (v < best.radius) best = {v, {x, line_y}};
  }
  // Golden-section polish in the gaps next to the best candidate.
  const auto it = std::lower_bound(xs.begin(), xs.end(), best.center.x);
  const double lo = it == xs.begin() ? best.center.x - 1.0 : *(it - 1);
  const double hi = it + 1 >= xs.end() ? best.center.x + 1.0 : *(it + 1);
  double a = lo, b = hi;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200 && b - a > 1e-12 * std::max(1.0, std::abs(a)); ++i) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (objective(c) < objective(d)) b = d;
    else a = c;
  }
  const double x = 0.5 * (a + b);
  if (const double v = objective(x); v < best.radius) best = {v, {x, line_y}};
  return best;
}

/// Pair (diametral) and triple (circumscribed) circles of distinct colors whose centre
/// is a local minimum of R, deduplicated within 1e-9.
inline std::vector<Circle> brute_force_minimal_circles(std::span<const ColoredPoint> points) {
  const int k = require_all_colors(points);
  const std::size_t n = points.size();
  std::vector<Circle> cand;
  if (k == 1)
    for (const auto& p : points) cand.push_back({p.pos(), 0.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].color == points[j].color) continue;
      cand.push_back({0.5 * (points[i].pos() + points[j].pos()), 0.5 * distance(points[i].pos(), points[j].pos())});
      for (std::size_t l = j + 1; l < n; ++l) {
        if (points[l].color == points[i].color || points[l].color == points[j].color) continue;
        if (auto c = detail::circum(points[i].pos(), points[j].pos(), points[l].pos())) cand.push_back(*c);
      }
    }

  std::vector<Circle> out;
  for (const Circle& c : cand) {
    // Per color: distance to the nearest point.
    std::vector<double> nearest(static_cast<std::size_t>(k), detail::kInf);
    for (const auto& p : points) {
      auto& d = nearest[static_cast<std::size_t>(p.color)];
      d = std::min(d, distance(c.center, p.pos()));
    }
    const double r = *std::max_element(nearest.begin(), nearest.end());
    const double tol = 1e-9 * std::max(1.0, r);
    if (std::abs(r - c.radius) > tol) continue;  // a defining point is not its color's nearest
    bool local_min = r <= tol;
    if (!local_min) {
      // The nearest representatives on the circle must not fit in an open half-plane.
      std::vector<double> ang;
      for (const auto& p : points) {
        const double d = distance(c.center, p.pos());
        if (d <= nearest[static_cast<std::size_t>(p.color)] + tol && d >= r - tol)
          ang.push_back(std::atan2(p.y - c.center.y, p.x - c.center.x));
      }
      std::sort(ang.begin(), ang.end());
      double gap = ang.empty() ? 2 * std::numbers::pi : ang.front() + 2 * std::numbers::pi - ang.back();
      for (std::size_t i = 1; i < ang.size(); ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
      local_min = ang.size() >= 2 && gap <= std::numbers::pi + 1e-9;
    }
    if (!local_min) continue;
    const Circle m{c.center, r};
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Circle& o) {
      return approx_eq(o.radius, m.radius) && approx_eq(o.center.x, m.center.x) && approx_eq(o.center.y, m.center.y);
    });
    if (!dup) out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense grid cross-checks for tiny instances (square, rectangle, triangle): boundary
// levels restricted to a grid of the given step.

inline double grid_scsr(std::span<const ColoredPoint> points, Point q, double step) {
  const int k = require_all_colors(points);
  double lo_x = q.x, hi_x = q.x, lo_y = q.y, hi_y = q.y;
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  auto grid = [step](double lo, double hi) {
    std::vector<double> g;
    for (double v = std::floor(lo / step) * step; v <= hi + step; v += step) g.push_back(v);
    return g;
  };
  const auto gx = grid(lo_x, hi_x), gy = grid(lo_y, hi_y);
  double best = detail::kInf;
  for (double l : gx) {
    if (l > q.x) break;
    for (double r : gx) {
      if (r < q.x || r < l) continue;
      for (double b : gy) {
        if (b > q.y) break;
        for (double t : gy) {
          if (t < q.y || t < b || (r - l) + (t - b) >= best) continue;
          if (detail::all_colors(points, k, [&](const ColoredPoint& p) {
                return p.x >= l && p.x <= r && p.y >= b && p.y <= t;
              }))
            best = (r - l) + (t - b);
        }
      }
    }
  }
  return best;
}

inline double grid_scss(std::span<const ColoredPoint> points, Point q, double step) {
  const int k = require_all_colors(points);
  double lo_x = q.x, hi_x = q.x, lo_y = q.y, hi_y = q.y;
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  double best = detail::kInf;
  for (double l = std::floor((lo_x - span) / step) * step; l <= q.x; l += step)
    for (double b = std::floor((lo_y - span) / step) * step; b <= q.y; b += step)
      for (double s = 0.0; s <= span + step && s < best; s += step) {
        if (l + s < q.x || b + s < q.y) continue;
        if (detail::all_colors(points, k, [&](const ColoredPoint& p) {
              return p.x >= l && p.x <= l + s && p.y >= b && p.y <= b + s;
            })) {
          best = s;
          break;
        }
      }
  return best;
}

inline double grid_scst(std::span<const ColoredPoint> points, Point q, double step) {
  const int k = require_all_colors(points);
  double lo_x = q.x, hi_x = q.x, lo_y = q.y, hi_y = q.y;
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double span = 3.0 * std::max(hi_x - lo_x, hi_y - lo_y) + step;
  const double h = std::sqrt(3.0) / 2.0;
  // Closed triangle with bottom-left corner (x, y) and side s.
  auto inside = [h](double x, double y, double s, Point p) {
    const double t = 1e-12;
    return p.y >= y - t && h * (p.x - x) - 0.5 * (p.y - y) >= -t * (1 + s) &&
           h * (x + s - p.x) - 0.5 * (p.y - y) >= -t * (1 + s);
  };
  double best = detail::kInf;
  for (double y = std::floor(lo_y / step) * step; y <= q.y; y += step)
    for (double x = std::floor((lo_x - span) / step) * step; x <= hi_x; x += step)
      for (double s = 0.0; s <= span && s < best; s += step) {
        if (!inside(x, y, s, q)) continue;
        if (detail::all_colors(points, k, [&](const ColoredPoint& p) { return inside(x, y, s, p.pos()); })) {
          best = s;
          break;
        }
      }
  return best;
}

}  // namespace chromaspan::oracle
