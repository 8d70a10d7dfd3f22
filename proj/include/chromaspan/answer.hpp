#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "chromaspan/geometry.hpp"

namespace chromaspan {

enum class ObjectKind : std::uint8_t { scsi, scss, scsr, scst, scsc };

inline std::string_view to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::scsi: return "scsi";
    case ObjectKind::scss: return "scss";
    case ObjectKind::scsr: return "scsr";
    case ObjectKind::scst: return "scst";
    case ObjectKind::scsc: return "scsc";
  }
  return "?";
}

inline std::optional<ObjectKind> parse_object_kind(std::string_view s) {
  for (auto k : {ObjectKind::scsi, ObjectKind::scss, ObjectKind::scsr, ObjectKind::scst, ObjectKind::scsc})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

enum class Provenance : std::uint8_t { contained, boundary_extension };

inline std::string_view to_string(Provenance p) {
  return p == Provenance::contained ? "contained" : "boundary-extension";
}

struct Interval {
  double left = 0.0, right = 0.0;
  double length() const { return right - left; }
  bool contains(double x) const { return left <= x && x <= right; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Rect {
  double l = 0.0, r = 0.0, b = 0.0, t = 0.0;
  double width() const { return r - l; }
  double height() const { return t - b; }
  double semi_perimeter() const { return width() + height(); }
  bool contains(Point p) const { return l <= p.x && p.x <= r && b <= p.y && p.y <= t; }
  bool contains(const Rect& o) const { return l <= o.l && o.r <= r && b <= o.b && o.t <= t; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Square {
  double l = 0.0, b = 0.0, side = 0.0;
  double r() const { return l + side; }
  double t() const { return b + side; }
  Rect rect() const { return {l, r(), b, t()}; }
  friend bool operator==(const Square&, const Square&) = default;
};

using Shape = std::variant<Interval, Square, Rect, FrameTriangle, Circle>;

/// A localized query result: the winning object, its size and where it came from.
struct QueryAnswer {
  ObjectKind object = ObjectKind::scsi;
  double size = 0.0;
  Shape shape;
  Provenance provenance = Provenance::contained;
  std::string family;
};

/// Keeps the smaller of two optional answers (first wins ties).
inline void keep_smaller(std::optional<QueryAnswer>& best, std::optional<QueryAnswer> cand) {
  if (cand && (!best || cand->size < best->size)) best = std::move(cand);
}

/// True when the shape's closed region contains p, with the global tolerance.
inline bool shape_contains(const Shape& s, Point p) {
  return std::visit(
      [&](const auto& g) -> bool {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Interval>) {
          return approx_le(g.left, p.x) && approx_le(p.x, g.right);
        } else if constexpr (std::is_same_v<G, Square> || std::is_same_v<G, Rect>) {
          Rect r;
          if constexpr (std::is_same_v<G, Square>) r = g.rect(); else r = g;
          return approx_le(r.l, p.x) && approx_le(p.x, r.r) && approx_le(r.b, p.y) && approx_le(p.y, r.t);
        } else if constexpr (std::is_same_v<G, FrameTriangle>) {
          return point_in_triangle_frames(p, g);
        } else {
          return disk_contains(g, p);
        }
      },
      s);
}

/// True when the shape contains q and at least one point of each color.
inline bool verify_answer(const QueryAnswer& a, std::span<const ColoredPoint> points, Point q) {
  if (!shape_contains(a.shape, q)) return false;
  const int k = color_count(points);
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  int covered = 0;
  for (const auto& p : points) {
    if (!seen[static_cast<std::size_t>(p.color)] && shape_contains(a.shape, p.pos())) {
      seen[static_cast<std::size_t>(p.color)] = true;
      ++covered;
    }
  }
  return covered == k;
}

}  // namespace chromaspan
