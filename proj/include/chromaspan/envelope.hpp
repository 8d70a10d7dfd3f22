#pragma once

// Distance-curve envelopes for circles centred on a line, and the (1+eps)
// boundary-case circle query built from rotated copies of them.
//
// Everything lives in squared-distance space. Along the line y = L the curve of p is
// f_p(x) = (x - px)^2 + (py - L)^2; subtracting the common x^2 leaves a line, so the
// per-color lower envelopes are lower hulls of lines and the upper envelope over
// colors is a max of concave piecewise-linear functions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chromaspan/answer.hpp"
#include "chromaspan/circles.hpp"
#include "chromaspan/geometry.hpp"
#include "chromaspan/range_min.hpp"

namespace chromaspan {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct EnvelopeArc {
  std::size_t owner;  // point id
  double x0, x1;      // may be infinite
};

enum class VertexKind { arc_intersection, arc_minimum };

struct EnvelopeVertex {
  double x;
  double value;  // squared height
  VertexKind kind;
  double radius;
};

/// A circle centred on the envelope's line.
struct LineCircle {
  double x;
  double radius2;
  Point center(double line_y) const { return {x, line_y}; }
  double radius() const { return std::sqrt(radius2); }
};

namespace detail {

// y = m x + c in reduced space.
struct ReducedLine {
  double m, c;
  std::size_t id;
  double at(double x) const { return m * x + c; }
};

inline ReducedLine reduced(const ColoredPoint& p, double line_y, std::size_t id) {
  const double dy = p.y - line_y;
  return {-2.0 * p.x, p.x * p.x + dy * dy, id};
}

struct Piece {
  double x0, x1;
  ReducedLine line;
};

// Lower envelope (pointwise min) of lines, as pieces from -inf to +inf.
inline std::vector<Piece> lower_envelope(std::vector<ReducedLine> lines) {
  // Slope descending: at -inf the steepest rising line is lowest.
  std::sort(lines.begin(), lines.end(), [](const ReducedLine& a, const ReducedLine& b) {
    if (a.m != b.m) return a.m > b.m;
    if (a.c != b.c) return a.c < b.c;
    return a.id < b.id;
  });
  std::vector<ReducedLine> hull;
  auto cross_x = [](const ReducedLine& a, const ReducedLine& b) { return (b.c - a.c) / (a.m - b.m); };
  for (const auto& l : lines) {
    if (!hull.empty() && hull.back().m == l.m) continue;  // parallel and not lower
    while (hull.size() >= 2 && cross_x(hull[hull.size() - 2], l) <= cross_x(hull[hull.size() - 2], hull.back()))
      hull.pop_back();
    hull.push_back(l);
  }
  std::vector<Piece> out;
  double x = -kInf;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const double next = i + 1 < hull.size() ? cross_x(hull[i], hull[i + 1]) : kInf;
    out.push_back({x, next, hull[i]});
    x = next;
  }
  return out;
}

// Upper envelope of lines restricted to [x0, x1], appended to `out`.
inline void upper_on_interval(const std::vector<ReducedLine>& lines, double x0, double x1, std::vector<Piece>& out) {
  std::size_t cur = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& a = lines[i];
    const auto& b = lines[cur];
    bool better;
    if (x0 == -kInf) better = a.m < b.m || (a.m == b.m && (a.c > b.c || (a.c == b.c && a.id < b.id)));
    else {
      const double va = a.at(x0), vb = b.at(x0);
      better = va > vb || (va == vb && (a.m > b.m || (a.m == b.m && a.id < b.id)));
    }
    if (better) cur = i;
  }
  double x = x0;
  while (true) {
    // Next line overtaking the current one.
    std::optional<std::size_t> next;
    double nx = x1;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (lines[i].m <= lines[cur].m) continue;
      const double xc = (lines[cur].c - lines[i].c) / (lines[i].m - lines[cur].m);
      if (!(xc > x) || xc >= x1) continue;
      if (!next || xc < nx || (xc == nx && lines[i].m > lines[*next].m)) {
        next = i;
        nx = xc;
      }
    }
    out.push_back({x, next ? nx : x1, lines[cur]});
    if (!next) break;
    x = nx;
    cur = *next;
  }
}

}  // namespace detail

/// Upper envelope over colors of the per-color lower envelopes of distance curves
/// along the horizontal line y = line_y.
class EnvelopeCurve {
 public:
  EnvelopeCurve() = default;

  /// Points below the line are reflected first (distances to the line are unchanged).
  EnvelopeCurve(std::span<const ColoredPoint> points, double line_y)
      : line_y_(line_y), points_(reflect_below_line(points, line_y)) {
    const int k = require_all_colors(points_);
    std::vector<std::vector<detail::ReducedLine>> by_color(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < points_.size(); ++i)
      by_color[static_cast<std::size_t>(points_[i].color)].push_back(detail::reduced(points_[i], line_y, i));
    std::vector<std::vector<detail::Piece>> lower;
    std::vector<double> cuts;
    for (auto& lines : by_color) {
      lower.push_back(detail::lower_envelope(std::move(lines)));
      for (const auto& p : lower.back())
        if (p.x1 != kInf) cuts.push_back(p.x1);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(kInf);

    std::vector<detail::Piece> pieces;
    std::vector<std::size_t> at(lower.size(), 0);
    std::vector<detail::ReducedLine> active(lower.size());
    double x0 = -kInf;
    for (double x1 : cuts) {
      for (std::size_t c = 0; c < lower.size(); ++c) {
        while (lower[c][at[c]].x1 <= x0) ++at[c];
        active[c] = lower[c][at[c]].line;
      }
      detail::upper_on_interval(active, x0, x1, pieces);
      x0 = x1;
    }

    for (const auto& p : pieces) {
      if (!arcs_.empty() && arcs_.back().owner == p.line.id) arcs_.back().x1 = p.x1;
      else if (arcs_.empty() || p.x1 > p.x0) arcs_.push_back({p.line.id, p.x0, p.x1});
    }
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      const auto& a = arcs_[i];
      if (i > 0) add_vertex(a.x0, VertexKind::arc_intersection);
      const double px = points_[a.owner].x;
      if (px > a.x0 && px < a.x1) add_vertex(px, VertexKind::arc_minimum);
    }
    std::vector<double> values;
    for (const auto& v : vertices_) values.push_back(v.value);
    vertex_min_ = RangeMin<double>(std::move(values));
  }

  double line_y() const { return line_y_; }
  const PointSet& points() const { return points_; }
  const std::vector<EnvelopeArc>& arcs() const { return arcs_; }
  const std::vector<EnvelopeVertex>& vertices() const { return vertices_; }

  std::size_t arc_index(double x) const {
    const auto it = std::upper_bound(arcs_.begin(), arcs_.end(), x,
                                     [](double v, const EnvelopeArc& a) { return v < a.x0; });
    return it == arcs_.begin() ? 0 : static_cast<std::size_t>(it - arcs_.begin()) - 1;
  }

  /// Squared radius of the smallest color-spanning circle centred at (x, line_y).
  double value(double x) const { return curve(arcs_[arc_index(x)].owner, x); }

  /// Minimum over the envelope (a vertex, arc minima included).
  LineCircle global_min() const {
    const std::size_t i = vertex_min_.argmin(0, vertices_.size());
    return {vertices_[i].x, vertices_[i].value};
  }

  /// Points where f_q changes side relative to the envelope, left to right.
  std::vector<double> crossings(Point q) const {
    const auto h = q_line(q);
    std::vector<double> out;
    for (const auto& a : arcs_) {
      const auto g = detail::reduced(points_[a.owner], line_y_, a.owner);
      const double dm = h.m - g.m, dc = h.c - g.c;
      if (dm == 0.0) continue;
      const double x = -dc / dm;
      if (x >= a.x0 && x < a.x1 && (out.empty() || out.back() != x)) out.push_back(x);
    }
    return out;
  }

  /// min over x of max(F(x), f_q(x)): the smallest color-spanning circle centred on the
  /// line whose closed disk contains q.
  LineCircle query_constrained(Point q) const {
    const double fq_at_q = fq(q, q.x);
    if (value(q.x) <= fq_at_q) return {q.x, fq_at_q};

    // Nearest crossings on either side; inside them F > f_q, outside f_q grows.
    const double a = walk(q, -1), b = walk(q, +1);
    LineCircle best{0.0, kInf};
    if (a != -kInf) best = {a, fq(q, a)};
    if (b != kInf && fq(q, b) < best.radius2) best = {b, fq(q, b)};
    const auto lo = std::lower_bound(vertices_.begin(), vertices_.end(), a,
                                     [](const EnvelopeVertex& v, double x) { return v.x < x; });
    const auto hi = std::upper_bound(vertices_.begin(), vertices_.end(), b,
                                     [](double x, const EnvelopeVertex& v) { return x < v.x; });
    if (lo < hi) {
      const std::size_t i = vertex_min_.argmin(static_cast<std::size_t>(lo - vertices_.begin()),
                                               static_cast<std::size_t>(hi - vertices_.begin()));
      if (vertices_[i].value < best.radius2) best = {vertices_[i].x, vertices_[i].value};
    }
    return best;
  }

  /// Owner of the arc reached by the outward walk from q.x (dir -1 left, +1 right),
  /// with the crossing x; none when f_q stays below F on that side.
  std::optional<std::pair<double, std::size_t>> crossing_owner(Point q, int dir) const {
    std::size_t owner = 0;
    const double x = walk(q, dir, &owner);
    if (std::isinf(x)) return std::nullopt;
    return std::pair{x, owner};
  }

 private:
  double curve(std::size_t owner, double x) const { return distance_curve_eval(points_[owner].pos(), line_y_, x); }
  double fq(Point q, double x) const { return distance_curve_eval(q, line_y_, x); }

  detail::ReducedLine q_line(Point q) const {
    const double dy = q.y - line_y_;
    return {-2.0 * q.x, q.x * q.x + dy * dy, 0};
  }

  void add_vertex(double x, VertexKind kind) {
    const double v = value(x);
    vertices_.push_back({x, v, kind, std::sqrt(v)});
  }

  // First x from q.x outward where f_q >= F; +-inf if none.
  double walk(Point q, int dir, std::size_t* owner = nullptr) const {
    const auto h = q_line(q);
    const std::size_t start = arc_index(q.x);
    for (std::size_t i = start; i < arcs_.size(); dir > 0 ? ++i : --i) {
      const auto& a = arcs_[i];
      const auto g = detail::reduced(points_[a.owner], line_y_, a.owner);
      // d(x) = f_q - F on this arc, linear in x.
      const double dm = h.m - g.m, dc = h.c - g.c;
      const double from = dir > 0 ? std::max(a.x0, q.x) : std::min(a.x1, q.x);
      const double to = dir > 0 ? a.x1 : a.x0;
      auto d = [&](double x) { return dm * x + dc; };
      if (owner) *owner = a.owner;
      if (!std::isinf(from) && d(from) >= 0.0) return from;
      const bool reaches = std::isinf(to) ? (dir > 0 ? dm > 0.0 : dm < 0.0) : d(to) >= 0.0;
      if (reaches && dm != 0.0) return std::clamp(-dc / dm, std::min(from, to), std::max(from, to));
      if (i == 0 && dir < 0) break;
    }
    return dir > 0 ? kInf : -kInf;
  }

  double line_y_ = 0.0;
  PointSet points_;
  std::vector<EnvelopeArc> arcs_;
  std::vector<EnvelopeVertex> vertices_;
  RangeMin<double> vertex_min_;
};

inline EnvelopeCurve build_envelope(std::span<const ColoredPoint> points, double line_y) {
  return EnvelopeCurve(points, line_y);
}

/// Distance ranks of all points from z (ties by id).
inline std::vector<std::size_t> distance_rank(std::span<const ColoredPoint> points, Point z) {
  std::vector<std::size_t> ids(points.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    return distance2(z, points[a].pos()) < distance2(z, points[b].pos());
  });
  return ids;
}

// ---------------------------------------------------------------------------
// Queries constrained to the horizontal line through q

/// One envelope per input point, on the horizontal line through it.
class HqFamily {
 public:
  HqFamily() = default;
  explicit HqFamily(std::span<const ColoredPoint> points) : points_(points.begin(), points.end()) {
    k_ = require_all_colors(points_);
    std::vector<std::size_t> order(points_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return points_[a].y < points_[b].y; });
    for (std::size_t i : order) {
      ys_.push_back(points_[i].y);
      envelopes_.emplace_back(points_, points_[i].y);
    }
  }

  const PointSet& points() const { return points_; }
  const std::vector<double>& line_ys() const { return ys_; }
  const EnvelopeCurve& envelope(std::size_t i) const { return envelopes_[i]; }

  /// Index i with ys[i] <= q.y < ys[i+1], clamped to the family.
  std::size_t bracket(double y) const {
    const auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
    return it == ys_.begin() ? 0 : static_cast<std::size_t>(it - ys_.begin()) - 1;
  }

  /// Smallest color-spanning circle centred on h(q) containing q. The envelope on
  /// h(q) is built for the query: nearest-point ranks can change between two
  /// neighbouring lines, so a precomputed envelope is not reusable off its line.
  QueryAnswer query_hq(Point q) const {
    const EnvelopeCurve env(points_, q.y);
    const LineCircle c = env.query_constrained(q);
    return make(c.center(q.y), c.radius(), "hq");
  }

  /// The bracketing-envelope procedure: crossings and vertices of the precomputed
  /// envelope below q, re-evaluated on h(q). Exact only while nearest-point ranks
  /// agree between the two lines.
  QueryAnswer query_hq_bracketed(Point q) const {
    const std::size_t i = bracket(q.y);
    const EnvelopeCurve& env = envelopes_[i];
    const Line hq = Line::horizontal(q.y);
    std::optional<QueryAnswer> best;
    auto consider = [&](Point c) {
      const double r = std::max(spanning_radius(c, points_, k_), distance(c, q));
      keep_smaller(best, make(c, r, "hq-bracketed"));
    };
    consider(q);
    double lo = -kInf, hi = kInf;
    for (int dir : {-1, +1}) {
      const auto hit = env.crossing_owner(q, dir);
      if (!hit) continue;
      (dir < 0 ? lo : hi) = hit->first;
      if (auto c = bisector_line_intersection(q, points_[hit->second].pos(), hq)) consider(*c);
    }
    for (const auto& v : env.vertices())
      if (v.x >= lo && v.x <= hi) consider({v.x, q.y});
    return *best;
  }

 private:
  QueryAnswer make(Point c, double r, const char* family) const {
    return {ObjectKind::scsc, r, Circle{c, r}, Provenance::boundary_extension, family};
  }

  PointSet points_;
  int k_ = 0;
  std::vector<double> ys_;
  std::vector<EnvelopeCurve> envelopes_;
};

// ---------------------------------------------------------------------------
// Orientation sampling

inline constexpr std::size_t kOrientationCap = 1'000'000;

inline std::size_t orientation_count(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0) throw std::invalid_argument("epsilon must lie in (0, 1]");
  return static_cast<std::size_t>(std::ceil(std::numbers::pi / epsilon - 1e-12));
}

/// Rotated copies of the h(q) machinery at angles t * epsilon, t < ceil(pi / epsilon).
class OrientationFamily {
 public:
  OrientationFamily() = default;
  OrientationFamily(std::span<const ColoredPoint> points, double epsilon) : epsilon_(epsilon) {
    require_all_colors(points);
    const std::size_t m = orientation_count(epsilon);
    if (points.size() * m > kOrientationCap)
      throw CapExceeded("n * ceil(pi/eps) = " + std::to_string(points.size() * m) + " exceeds " +
                        std::to_string(kOrientationCap));
    for (std::size_t t = 0; t < m; ++t) {
      const double theta = static_cast<double>(t) * epsilon;
      angles_.push_back(theta);
      families_.emplace_back(rotate_point_set(points, -theta));
    }
  }

  double epsilon() const { return epsilon_; }
  const std::vector<double>& angles() const { return angles_; }
  const HqFamily& family(std::size_t t) const { return families_[t]; }

  /// Best circle through q over all sampled line directions, in the input frame.
  QueryAnswer query_type2_approx(Point q) const {
    std::optional<QueryAnswer> best;
    for (std::size_t t = 0; t < families_.size(); ++t) {
      QueryAnswer a = families_[t].query_hq(rotate(q, -angles_[t]));
      auto& c = std::get<Circle>(a.shape);
      c.center = rotate(c.center, angles_[t]);
      a.family = "orientation-" + std::to_string(t);
      keep_smaller(best, std::move(a));
    }
    return *best;
  }

 private:
  double epsilon_ = 0.0;
  std::vector<double> angles_;
  std::vector<HqFamily> families_;
};

/// (1+eps)-approximate smallest color-spanning circle containing q.
class ScscIndex {
 public:
  ScscIndex(std::span<const ColoredPoint> points, double epsilon)
      : type1_(points), orientations_(points, epsilon) {}

  const ScscType1Index& type1() const { return type1_; }
  const OrientationFamily& orientations() const { return orientations_; }

  std::optional<QueryAnswer> query_type1(Point q) const { return type1_.query(q); }
  QueryAnswer query_type2_approx(Point q) const { return orientations_.query_type2_approx(q); }

  QueryAnswer query(Point q) const {
    std::optional<QueryAnswer> best = query_type1(q);
    keep_smaller(best, query_type2_approx(q));
    return *best;
  }

 private:
  ScscType1Index type1_;
  OrientationFamily orientations_;
};

}  // namespace chromaspan
