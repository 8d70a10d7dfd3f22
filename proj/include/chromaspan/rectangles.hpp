#pragma once

// Minimal color-spanning axis-parallel rectangles and the smallest semi-perimeter
// color-spanning rectangle containing a query point.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "chromaspan/aggregate_index.hpp"
#include "chromaspan/answer.hpp"
#include "chromaspan/geometry.hpp"

namespace chromaspan {

namespace detail {

inline bool covers_all(std::span<const ColoredPoint> points, int k, auto&& keep) {
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  int covered = 0;
  for (const auto& p : points) {
    if (!keep(p) || seen[static_cast<std::size_t>(p.color)]) continue;
    seen[static_cast<std::size_t>(p.color)] = true;
    if (++covered == k) return true;
  }
  return covered == k;
}

}  // namespace detail

/// Shrink test: the rectangle spans all colors and pulling any side inward loses one.
inline bool is_minimal_rect(const Rect& r, std::span<const ColoredPoint> points, int k) {
  auto inside = [&](const ColoredPoint& p) { return r.contains(p.pos()); };
  if (!detail::covers_all(points, k, inside)) return false;
  const std::array<bool (*)(const Rect&, const ColoredPoint&), 4> off_side{
      [](const Rect& r, const ColoredPoint& p) { return p.x > r.l; },
      [](const Rect& r, const ColoredPoint& p) { return p.x < r.r; },
      [](const Rect& r, const ColoredPoint& p) { return p.y > r.b; },
      [](const Rect& r, const ColoredPoint& p) { return p.y < r.t; }};
  for (auto keep_side : off_side) {
    auto kept = [&](const ColoredPoint& p) { return inside(p) && keep_side(r, p); };
    if (detail::covers_all(points, k, kept)) return false;
  }
  return true;
}

/// All minimal color-spanning rectangles. For each pair of x-boundaries the
/// y-windows of the slab are swept with two pointers; survivors pass the shrink test.
inline std::vector<Rect> enumerate_minimal_rects(std::span<const ColoredPoint> points) {
  const int k = require_all_colors(points);
  std::vector<double> xs;
  for (const auto& p : points) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<ColoredPoint> by_y(points.begin(), points.end());
  std::stable_sort(by_y.begin(), by_y.end(), [](const auto& a, const auto& b) { return a.y < b.y; });

  std::set<std::tuple<double, double, double, double>> seen;
  std::vector<Rect> out;
  std::vector<ColoredPoint> slab;
  std::vector<int> count(static_cast<std::size_t>(k));
  for (std::size_t li = 0; li < xs.size(); ++li) {
    for (std::size_t ri = li; ri < xs.size(); ++ri) {
      const double xl = xs[li], xr = xs[ri];
      slab.clear();
      for (const auto& p : by_y)
        if (p.x >= xl && p.x <= xr) slab.push_back(p);
      // Two pointers over distinct y levels of the slab.
      std::fill(count.begin(), count.end(), 0);
      int covered = 0;
      std::size_t hi = 0;
      for (std::size_t lo = 0; lo < slab.size();) {
        const double yb = slab[lo].y;
        std::size_t lo_end = lo;
        while (lo_end < slab.size() && slab[lo_end].y == yb) ++lo_end;
        if (hi < lo_end) {
          for (; hi < lo_end; ++hi)
            if (count[static_cast<std::size_t>(slab[hi].color)]++ == 0) ++covered;
        }
        while (covered < k && hi < slab.size()) {
          const double level = slab[hi].y;
          while (hi < slab.size() && slab[hi].y == level)
            if (count[static_cast<std::size_t>(slab[hi++].color)]++ == 0) ++covered;
        }
        if (covered < k) break;
        const Rect r{xl, xr, yb, slab[hi - 1].y};
        if (is_minimal_rect(r, points, k) && seen.emplace(r.l, r.r, r.b, r.t).second) out.push_back(r);
        for (; lo < lo_end; ++lo)
          if (--count[static_cast<std::size_t>(slab[lo].color)] == 0) --covered;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Rect& a, const Rect& b) {
    return std::tie(a.l, a.b, a.r, a.t) < std::tie(b.l, b.b, b.r, b.t);
  });
  return out;
}

namespace detail {

template <std::size_t D, class Obj, class CoordsFn, class KeyFn>
DominanceIndex<D> make_index(const std::vector<Obj>& objs, Extremum mode, CoordsFn coords, KeyFn key) {
  std::vector<KeyedSite<D>> sites;
  sites.reserve(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i) sites.push_back({coords(objs[i]), key(objs[i]), i});
  return DominanceIndex<D>(std::move(sites), mode);
}

inline Rect bounding_rect(const Rect& r, Point q) {
  return {std::min(r.l, q.x), std::max(r.r, q.x), std::min(r.b, q.y), std::max(r.t, q.y)};
}

}  // namespace detail

/// Nine structures over the minimal rectangles: one containment index, four stabbed
/// families (h(q) or v(q) crosses the rectangle) and four quadrant families.
class ScsrIndex {
 public:
  explicit ScsrIndex(std::span<const ColoredPoint> points) : ScsrIndex(enumerate_minimal_rects(points)) {}

  explicit ScsrIndex(std::vector<Rect> rects) : rects_(std::move(rects)) {
    using detail::make_index;
    const auto mn = Extremum::min;
    contained_ = make_index<4>(rects_, mn, [](const Rect& r) { return std::array{r.t, r.b, r.l, r.r}; },
                               [](const Rect& r) { return r.semi_perimeter(); });
    tbr_ = make_index<3>(rects_, mn, [](const Rect& r) { return std::array{r.t, r.b, r.r}; },
                         [](const Rect& r) { return r.height() - r.l; });
    tbl_ = make_index<3>(rects_, mn, [](const Rect& r) { return std::array{r.t, r.b, r.l}; },
                         [](const Rect& r) { return r.height() + r.r; });
    lrb_ = make_index<3>(rects_, mn, [](const Rect& r) { return std::array{r.l, r.r, r.t}; },
                         [](const Rect& r) { return r.width() - r.b; });
    lrt_ = make_index<3>(rects_, mn, [](const Rect& r) { return std::array{r.l, r.r, r.b}; },
                         [](const Rect& r) { return r.width() + r.t; });
    bottom_left_ = make_index<2>(rects_, mn, [](const Rect& r) { return std::array{r.t, r.r}; },
                                 [](const Rect& r) { return -(r.l + r.b); });
    top_left_ = make_index<2>(rects_, mn, [](const Rect& r) { return std::array{r.b, r.r}; },
                              [](const Rect& r) { return r.t - r.l; });
    bottom_right_ = make_index<2>(rects_, mn, [](const Rect& r) { return std::array{r.t, r.l}; },
                                  [](const Rect& r) { return r.r - r.b; });
    top_right_ = make_index<2>(rects_, mn, [](const Rect& r) { return std::array{r.b, r.l}; },
                               [](const Rect& r) { return r.r + r.t; });
  }

  const std::vector<Rect>& minimal_rects() const { return rects_; }

  std::optional<QueryAnswer> query_contained(Point q) const {
    return answer(contained_.best({ge(q.y), le(q.y), le(q.x), ge(q.x)}), 0.0, q, "contained");
  }

  std::optional<QueryAnswer> query_stabbed(Point q) const {
    std::optional<QueryAnswer> best;
    keep_smaller(best, answer(tbr_.best({ge(q.y), le(q.y), lt(q.x)}), q.x, q, "stabbed-tbr"));
    keep_smaller(best, answer(tbl_.best({ge(q.y), le(q.y), gt(q.x)}), -q.x, q, "stabbed-tbl"));
    keep_smaller(best, answer(lrb_.best({le(q.x), ge(q.x), lt(q.y)}), q.y, q, "stabbed-lrb"));
    keep_smaller(best, answer(lrt_.best({le(q.x), ge(q.x), gt(q.y)}), -q.y, q, "stabbed-lrt"));
    return best;
  }

  std::optional<QueryAnswer> query_not_stabbed(Point q) const {
    std::optional<QueryAnswer> best;
    keep_smaller(best, answer(bottom_left_.best({lt(q.y), lt(q.x)}), q.x + q.y, q, "quadrant-bl"));
    keep_smaller(best, answer(top_left_.best({gt(q.y), lt(q.x)}), q.x - q.y, q, "quadrant-tl"));
    keep_smaller(best, answer(bottom_right_.best({lt(q.y), gt(q.x)}), q.y - q.x, q, "quadrant-br"));
    keep_smaller(best, answer(top_right_.best({gt(q.y), gt(q.x)}), -q.x - q.y, q, "quadrant-tr"));
    return best;
  }

  /// Smallest semi-perimeter color-spanning rectangle containing q.
  QueryAnswer query(Point q) const {
    std::optional<QueryAnswer> best = query_contained(q);
    keep_smaller(best, query_stabbed(q));
    keep_smaller(best, query_not_stabbed(q));
    return *best;
  }

 private:
  // Extended size is the stored key plus an offset that depends only on q.
  std::optional<QueryAnswer> answer(const std::optional<Hit>& hit, double offset, Point q,
                                    const char* family) const {
    if (!hit) return std::nullopt;
    const Rect& src = rects_[hit->payload];
    const bool inside = src.contains(q);
    return QueryAnswer{ObjectKind::scsr, hit->key + offset, detail::bounding_rect(src, q),
                       inside ? Provenance::contained : Provenance::boundary_extension, family};
  }

  std::vector<Rect> rects_;
  DominanceIndex<4> contained_;
  DominanceIndex<3> tbr_, tbl_, lrb_, lrt_;
  DominanceIndex<2> bottom_left_, top_left_, bottom_right_, top_right_;
};

}  // namespace chromaspan
