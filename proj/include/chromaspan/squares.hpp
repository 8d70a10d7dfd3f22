#pragma once

// Minimal color-spanning axis-parallel squares and the smallest color-spanning
// square containing a query point.

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
#include "chromaspan/rectangles.hpp"

namespace chromaspan {

/// Enumerates minimal color-spanning squares.
///
/// Every color-spanning square contains a minimal rectangle, so candidates are the
/// squares of side max(w, h) flush with a minimal rectangle: one per rectangle when it
/// is square, otherwise the two placements sliding along the slack axis (aligned with
/// either end). A candidate survives when no minimal rectangle with a strictly smaller
/// longer side fits inside it, i.e. when no smaller color-spanning square lies inside.
inline std::vector<Square> minimal_squares_from_rects(const std::vector<Rect>& rects) {
  std::set<std::tuple<double, double, double>> seen;
  std::vector<Square> candidates;
  auto add = [&](Square s) {
    if (seen.emplace(s.l, s.b, s.side).second) candidates.push_back(s);
  };
  for (const Rect& r : rects) {
    const double w = r.width(), h = r.height();
    if (w >= h) {
      add({r.l, r.b, w});
      if (h < w) add({r.l, r.t - w, w});
    } else {
      add({r.l, r.b, h});
      add({r.r - h, r.b, h});
    }
  }

  auto fits_inside = [](const Rect& inner, const Square& s) {
    return approx_le(s.l, inner.l) && approx_le(inner.r, s.r()) && approx_le(s.b, inner.b) &&
           approx_le(inner.t, s.t());
  };
  std::vector<Square> out;
  for (const Square& s : candidates) {
    const bool minimal = std::none_of(rects.begin(), rects.end(), [&](const Rect& r) {
      return std::max(r.width(), r.height()) < s.side && !approx_eq(std::max(r.width(), r.height()), s.side) &&
             fits_inside(r, s);
    });
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(),
            [](const Square& a, const Square& b) { return std::tie(a.l, a.b, a.side) < std::tie(b.l, b.b, b.side); });
  return out;
}

inline std::vector<Square> enumerate_minimal_squares(std::span<const ColoredPoint> points) {
  return minimal_squares_from_rects(enumerate_minimal_rects(points));
}

/// The square of the given side containing `src` and q, centred on the needed extent
/// along any axis with slack.
inline Square place_extended_square(const Square& src, Point q, double side) {
  auto place = [side](double lo, double hi) {
    const double slack = side - (hi - lo);
    return slack > 0 ? lo - slack / 2 : lo;
  };
  const double l = place(std::min(src.l, q.x), std::max(src.r(), q.x));
  const double b = place(std::min(src.b, q.y), std::max(src.t(), q.y));
  return {l, b, side};
}

/// One containment index, four stabbed families and four quadrant families whose
/// extension size is the L-infinity distance from q to the square's far corner.
class ScssIndex {
 public:
  explicit ScssIndex(std::span<const ColoredPoint> points) : ScssIndex(enumerate_minimal_squares(points)) {}

  explicit ScssIndex(std::vector<Square> squares) : squares_(std::move(squares)) {
    using detail::make_index;
    const auto mn = Extremum::min;
    contained_ = make_index<4>(squares_, mn, [](const Square& s) { return std::array{s.t(), s.b, s.l, s.r()}; },
                               [](const Square& s) { return s.side; });
    // Left of q: the nearest left boundary wins (largest l), stored as -l.
    tbr_ = make_index<3>(squares_, mn, [](const Square& s) { return std::array{s.t(), s.b, s.r()}; },
                         [](const Square& s) { return -s.l; });
    tbl_ = make_index<3>(squares_, mn, [](const Square& s) { return std::array{s.t(), s.b, s.l}; },
                         [](const Square& s) { return s.r(); });
    lrb_ = make_index<3>(squares_, mn, [](const Square& s) { return std::array{s.l, s.r(), s.t()}; },
                         [](const Square& s) { return -s.b; });
    lrt_ = make_index<3>(squares_, mn, [](const Square& s) { return std::array{s.l, s.r(), s.b}; },
                         [](const Square& s) { return s.t(); });

    auto corners = [&](auto filter, auto corner) {
      std::vector<CornerSite> sites;
      sites.reserve(squares_.size());
      for (std::size_t i = 0; i < squares_.size(); ++i) sites.push_back({filter(squares_[i]), corner(squares_[i]), i});
      return LinfCornerIndex(std::move(sites));
    };
    bottom_left_ = corners([](const Square& s) { return std::array{s.t(), s.r()}; },
                           [](const Square& s) { return Point{s.l, s.b}; });
    top_left_ = corners([](const Square& s) { return std::array{s.b, s.r()}; },
                        [](const Square& s) { return Point{s.l, s.t()}; });
    bottom_right_ = corners([](const Square& s) { return std::array{s.t(), s.l}; },
                            [](const Square& s) { return Point{s.r(), s.b}; });
    top_right_ = corners([](const Square& s) { return std::array{s.b, s.l}; },
                         [](const Square& s) { return Point{s.r(), s.t()}; });
  }

  const std::vector<Square>& minimal_squares() const { return squares_; }

  std::optional<QueryAnswer> query_contained(Point q) const {
    const auto hit = contained_.best({ge(q.y), le(q.y), le(q.x), ge(q.x)});
    if (!hit) return std::nullopt;
    return QueryAnswer{ObjectKind::scss, hit->key, squares_[hit->payload], Provenance::contained, "contained"};
  }

  std::optional<QueryAnswer> query_stabbed(Point q) const {
    std::optional<QueryAnswer> best;
    keep_smaller(best, extend(tbr_.best({ge(q.y), le(q.y), lt(q.x)}), q.x, q, "stabbed-tbr"));
    keep_smaller(best, extend(tbl_.best({ge(q.y), le(q.y), gt(q.x)}), -q.x, q, "stabbed-tbl"));
    keep_smaller(best, extend(lrb_.best({le(q.x), ge(q.x), lt(q.y)}), q.y, q, "stabbed-lrb"));
    keep_smaller(best, extend(lrt_.best({le(q.x), ge(q.x), gt(q.y)}), -q.y, q, "stabbed-lrt"));
    return best;
  }

  std::optional<QueryAnswer> query_not_stabbed(Point q) const {
    std::optional<QueryAnswer> best;
    keep_smaller(best, extend(bottom_left_.nearest({lt(q.y), lt(q.x)}, q), q, "quadrant-bl"));
    keep_smaller(best, extend(top_left_.nearest({gt(q.y), lt(q.x)}, q), q, "quadrant-tl"));
    keep_smaller(best, extend(bottom_right_.nearest({lt(q.y), gt(q.x)}, q), q, "quadrant-br"));
    keep_smaller(best, extend(top_right_.nearest({gt(q.y), gt(q.x)}, q), q, "quadrant-tr"));
    return best;
  }

  QueryAnswer query(Point q) const {
    std::optional<QueryAnswer> best = query_contained(q);
    keep_smaller(best, query_stabbed(q));
    keep_smaller(best, query_not_stabbed(q));
    return *best;
  }

 private:
  std::optional<QueryAnswer> extend(const std::optional<Hit>& hit, double offset, Point q, const char* family) const {
    if (!hit) return std::nullopt;
    return make(hit->payload, hit->key + offset, q, family);
  }
  std::optional<QueryAnswer> extend(const std::optional<CornerHit>& hit, Point q, const char* family) const {
    if (!hit) return std::nullopt;
    return make(hit->payload, hit->distance, q, family);
  }
  QueryAnswer make(std::size_t id, double size, Point q, const char* family) const {
    return {ObjectKind::scss, size, place_extended_square(squares_[id], q, size), Provenance::boundary_extension,
            family};
  }

  std::vector<Square> squares_;
  DominanceIndex<4> contained_;
  DominanceIndex<3> tbr_, tbl_, lrb_, lrt_;
  LinfCornerIndex bottom_left_, top_left_, bottom_right_, top_right_;
};

}  // namespace chromaspan
