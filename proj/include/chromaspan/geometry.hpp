#pragma once

// Floating-point geometric kernel shared by every shape module.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chromaspan {

/// Global comparison tolerance. Relative once magnitudes exceed 1.
inline constexpr double EPS = 1e-9;

inline double tolerance_for(double a, double b = 0.0) {
  return EPS * std::max({1.0, std::abs(a), std::abs(b)});
}
inline bool approx_eq(double a, double b) { return std::abs(a - b) <= tolerance_for(a, b); }
inline bool approx_le(double a, double b) { return a <= b + tolerance_for(a, b); }
inline bool approx_ge(double a, double b) { return approx_le(b, a); }

// ---------------------------------------------------------------------------
// Errors

class MissingColor : public std::runtime_error {
 public:
  explicit MissingColor(int color)
      : std::runtime_error("no point carries color " + std::to_string(color)), color_(color) {}
  int color() const noexcept { return color_; }

 private:
  int color_;
};

class CoincidentCurves : public std::invalid_argument {
 public:
  CoincidentCurves() : std::invalid_argument("distance curves coincide for every x") {}
};

// ---------------------------------------------------------------------------
// Points

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double distance2(Point a, Point b) { return norm2(a - b); }

/// Orientation of c relative to the directed line a->b (>0 left turn).
inline double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

/// A point carrying a color id in [0, k). In 1D mode y is 0.
struct ColoredPoint {
  double x = 0.0;
  double y = 0.0;
  int color = 0;

  Point pos() const { return {x, y}; }
  friend bool operator==(const ColoredPoint&, const ColoredPoint&) = default;
};

using PointSet = std::vector<ColoredPoint>;

/// Number of colors implied by the largest color id.
inline int color_count(std::span<const ColoredPoint> points) {
  int k = 0;
  for (const auto& p : points) k = std::max(k, p.color + 1);
  return k;
}

/// Throws MissingColor when some id in [0, k) has no point, or when the set is empty.
inline int require_all_colors(std::span<const ColoredPoint> points) {
  if (points.empty()) throw MissingColor(0);
  const int k = color_count(points);
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (const auto& p : points) {
    if (p.color < 0) throw std::invalid_argument("negative color id");
    seen[static_cast<std::size_t>(p.color)] = true;
  }
  for (int c = 0; c < k; ++c)
    if (!seen[static_cast<std::size_t>(c)]) throw MissingColor(c);
  return k;
}

// ---------------------------------------------------------------------------
// Three rotated frames for fixed-orientation equilateral triangles.
//
// alpha: point rotated 60 degrees anticlockwise, beta: 60 degrees clockwise.
// An apex-up triangle with horizontal base is {y >= base, y_beta <= left, y_alpha <= right}.

inline constexpr double kSin60 = std::numbers::sqrt3 / 2.0;
inline constexpr double kCos60 = 0.5;

struct TriFrameCoords {
  double x_nu = 0.0, y_nu = 0.0;
  double x_alpha = 0.0, y_alpha = 0.0;
  double x_beta = 0.0, y_beta = 0.0;
};

inline TriFrameCoords tri_frame(Point p) {
  return {p.x,
          p.y,
          p.x * kCos60 - p.y * kSin60,
          p.x * kSin60 + p.y * kCos60,
          p.x * kCos60 + p.y * kSin60,
          -p.x * kSin60 + p.y * kCos60};
}

inline double frame_alpha(Point p) { return p.x * kSin60 + p.y * kCos60; }
inline double frame_beta(Point p) { return -p.x * kSin60 + p.y * kCos60; }

/// Apex-up equilateral triangle with horizontal base stored as three line levels.
struct FrameTriangle {
  double base = 0.0;   // y >= base
  double left = 0.0;   // y_beta <= left   (left arm)
  double right = 0.0;  // y_alpha <= right (right arm)

  double height() const { return std::max(0.0, left + right - base); }
  double side() const { return 2.0 * height() / std::numbers::sqrt3; }

  Point bottom_left() const { return {(base - 2.0 * left) / std::numbers::sqrt3, base}; }
  Point bottom_right() const { return {(2.0 * right - base) / std::numbers::sqrt3, base}; }
  Point apex() const { return {(right - left) / std::numbers::sqrt3, left + right}; }

  friend bool operator==(const FrameTriangle&, const FrameTriangle&) = default;
};

/// The triangle whose bottom-left vertex is `bl` and whose side is `side`.
inline FrameTriangle frame_triangle_from(Point bl, double side) {
  const Point br{bl.x + side, bl.y};
  return {bl.y, frame_beta(bl), frame_alpha(br)};
}

/// Closed containment via three orientation tests.
inline bool point_in_triangle_direct(Point p, Point a, Point b, Point c) {
  const double scale = std::max({1.0, norm2(b - a), norm2(c - a), norm2(p - a)});
  const double tol = EPS * scale;
  double d1 = orient(a, b, p), d2 = orient(b, c, p), d3 = orient(c, a, p);
  if (orient(a, b, c) < 0) {
    d1 = -d1;
    d2 = -d2;
    d3 = -d3;
  }
  return d1 >= -tol && d2 >= -tol && d3 >= -tol;
}

inline bool point_in_triangle_direct(Point p, const FrameTriangle& t) {
  return point_in_triangle_direct(p, t.bottom_left(), t.bottom_right(), t.apex());
}

/// Closed containment as one above/below test per frame.
inline bool point_in_triangle_frames(Point p, const FrameTriangle& t) {
  const TriFrameCoords f = tri_frame(p);
  return approx_ge(f.y_nu, t.base) && approx_le(f.y_beta, t.left) &&
         approx_le(f.y_alpha, t.right);
}

// ---------------------------------------------------------------------------
// Metrics, circles and the paraboloid lift

inline double linf_distance(Point a, Point b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

struct Circle {
  Point center;
  double radius = 0.0;
  friend bool operator==(const Circle&, const Circle&) = default;
};

/// Closed-disk membership with the global tolerance.
inline bool disk_contains(const Circle& c, Point p) {
  return distance(c.center, p) <= c.radius + tolerance_for(c.radius);
}

/// Plane z = a*x + b*y + c.
struct LiftedPlane {
  double a = 0.0, b = 0.0, c = 0.0;
  double at(Point p) const { return a * p.x + b * p.y + c; }
};

inline LiftedPlane lift_circle(const Circle& c) {
  const Point o = c.center;
  return {2.0 * o.x, 2.0 * o.y, c.radius * c.radius - o.x * o.x - o.y * o.y};
}

/// True iff p lifted onto z = x^2 + y^2 lies on or below the plane.
inline bool point_below_lift(Point p, const LiftedPlane& pl) {
  const double lifted = p.x * p.x + p.y * p.y;
  const double plane = pl.at(p);
  const double scale = std::max({1.0, lifted, std::abs(pl.c), std::abs(pl.a * p.x), std::abs(pl.b * p.y)});
  return lifted <= plane + EPS * scale;
}

// ---------------------------------------------------------------------------
// Lines, bisectors and squared-distance curves

struct Line {
  Point origin;
  Point dir{1.0, 0.0};

  static Line horizontal(double y) { return {{0.0, y}, {1.0, 0.0}}; }
  Point at(double t) const { return origin + t * dir; }
};

/// The point of `line` equidistant from p and q; none when the bisector is parallel to it.
inline std::optional<Point> bisector_line_intersection(Point p, Point q, const Line& line) {
  const double denom = 2.0 * dot(line.dir, q - p);
  const double scale = std::sqrt(norm2(line.dir) * norm2(q - p));
  if (std::abs(denom) <= EPS * std::max(1.0, scale)) return std::nullopt;
  const double t = (distance2(line.origin, q) - distance2(line.origin, p)) / denom;
  return line.at(t);
}

/// Squared distance from (x, line_y) to p.
inline double distance_curve_eval(Point p, double line_y, double x) {
  const double dx = x - p.x, dy = p.y - line_y;
  return dx * dx + dy * dy;
}

/// The x where the distance curves of p and q agree. Throws CoincidentCurves when they agree everywhere.
inline std::optional<double> curve_intersection_x(Point p, Point q, double line_y) {
  const double hp = p.y - line_y, hq = q.y - line_y;
  if (p.x == q.x) {
    if (std::abs(std::abs(hp) - std::abs(hq)) <= tolerance_for(hp, hq)) throw CoincidentCurves();
    return std::nullopt;
  }
  // (x-px)^2 + hp^2 = (x-qx)^2 + hq^2
  return (q.x * q.x + hq * hq - p.x * p.x - hp * hp) / (2.0 * (q.x - p.x));
}

inline PointSet reflect_below_line(std::span<const ColoredPoint> points, double line_y) {
  PointSet out(points.begin(), points.end());
  for (auto& p : out)
    if (p.y < line_y) p.y = 2.0 * line_y - p.y;
  return out;
}

inline Point rotate(Point p, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

inline PointSet rotate_point_set(std::span<const ColoredPoint> points, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  PointSet out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back({c * p.x - s * p.y, s * p.x + c * p.y, p.color});
  return out;
}

/// Circumscribed circle of three points; none when collinear.
inline std::optional<Circle> circumcircle(Point a, Point b, Point c) {
  const Point ab = b - a, ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double scale = std::max(1.0, norm2(ab) * norm2(ac));
  if (std::abs(d) <= 1e-12 * std::sqrt(scale)) return std::nullopt;
  const double b2 = norm2(ab), c2 = norm2(ac);
  const Point off{(ac.y * b2 - ab.y * c2) / d, (ab.x * c2 - ac.x * b2) / d};
  return Circle{a + off, std::sqrt(norm2(off))};
}

}  // namespace chromaspan
