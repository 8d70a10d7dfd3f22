#pragma once

// Smallest color-spanning interval containing a query value (1D).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chromaspan/answer.hpp"
#include "chromaspan/geometry.hpp"
#include "chromaspan/range_min.hpp"

namespace chromaspan {

/// start/end/span entries of one input coordinate.
struct IntervalLists {
  std::optional<Interval> start;  // smallest color-spanning interval whose left end is here
  std::optional<Interval> end;    // smallest color-spanning interval whose right end is here
  std::optional<Interval> span;   // smallest minimal interval with this coordinate strictly inside
};

namespace detail {

// Distinct sorted coordinates with the colors found at each one.
struct Coordinates {
  std::vector<double> xs;
  std::vector<std::vector<int>> colors;
};

inline Coordinates group_coordinates(std::span<const ColoredPoint> points) {
  std::vector<ColoredPoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  Coordinates c;
  for (const auto& p : sorted) {
    if (c.xs.empty() || c.xs.back() != p.x) {
      c.xs.push_back(p.x);
      c.colors.emplace_back();
    }
    c.colors.back().push_back(p.color);
  }
  return c;
}

// For every left index a, the smallest right index whose window covers all k colors
// (nullopt once no such window exists). Windows are scanned with two pointers.
inline std::vector<std::optional<std::size_t>> right_reach(const Coordinates& c, int k) {
  const std::size_t m = c.xs.size();
  std::vector<std::optional<std::size_t>> reach(m);
  std::vector<int> count(static_cast<std::size_t>(k), 0);
  int covered = 0;
  std::size_t r = 0;  // window is [a, r)
  for (std::size_t a = 0; a < m; ++a) {
    while (covered < k && r < m) {
      for (int col : c.colors[r])
        if (count[static_cast<std::size_t>(col)]++ == 0) ++covered;
      ++r;
    }
    if (covered < k) break;
    reach[a] = r - 1;
    for (int col : c.colors[a])
      if (--count[static_cast<std::size_t>(col)] == 0) --covered;
  }
  return reach;
}

}  // namespace detail

/// All minimal color-spanning intervals, sorted by left endpoint. Throws MissingColor.
inline std::vector<Interval> enumerate_minimal_intervals(std::span<const ColoredPoint> points) {
  const int k = require_all_colors(points);
  const auto coords = detail::group_coordinates(points);
  const auto reach = detail::right_reach(coords, k);
  std::vector<Interval> out;
  for (std::size_t a = 0; a < reach.size(); ++a) {
    if (!reach[a]) break;
    // Among lefts sharing a right end only the last one is minimal.
    const bool last_for_right = a + 1 >= reach.size() || !reach[a + 1] || *reach[a + 1] != *reach[a];
    if (last_for_right) out.push_back({coords.xs[a], coords.xs[*reach[a]]});
  }
  return out;
}

class ScsiIndex {
 public:
  explicit ScsiIndex(std::span<const ColoredPoint> points) {
    const int k = require_all_colors(points);
    const auto coords = detail::group_coordinates(points);
    xs_ = coords.xs;
    intervals_ = enumerate_minimal_intervals(points);
    const std::size_t m = xs_.size();
    lists_.resize(m);

    const auto reach = detail::right_reach(coords, k);
    for (std::size_t a = 0; a < m; ++a)
      if (reach[a]) lists_[a].start = Interval{xs_[a], xs_[*reach[a]]};

    // Mirror the coordinates to obtain the left reach of every right end.
    detail::Coordinates mirrored;
    for (std::size_t i = m; i-- > 0;) {
      mirrored.xs.push_back(-xs_[i]);
      mirrored.colors.push_back(coords.colors[i]);
    }
    const auto back = detail::right_reach(mirrored, k);
    for (std::size_t j = 0; j < m; ++j) {
      if (!back[j]) continue;
      const std::size_t right = m - 1 - j, left = m - 1 - *back[j];
      lists_[right].end = Interval{xs_[left], xs_[right]};
    }

    // Minimal intervals have increasing lefts and rights, so those strictly
    // spanning x form a contiguous run.
    std::vector<double> lengths;
    lengths.reserve(intervals_.size());
    for (const auto& iv : intervals_) lengths.push_back(iv.length());
    const RangeMin<double> shortest(std::move(lengths));
    for (std::size_t c = 0; c < m; ++c) {
      const double x = xs_[c];
      const auto first = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                                          [](double v, const Interval& iv) { return v < iv.right; });
      const auto past = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                                         [](const Interval& iv, double v) { return iv.left < v; });
      if (first < past) {
        const auto lo = static_cast<std::size_t>(first - intervals_.begin());
        const auto hi = static_cast<std::size_t>(past - intervals_.begin());
        lists_[c].span = intervals_[shortest.argmin(lo, hi)];
      }
    }
  }

  const std::vector<Interval>& minimal_intervals() const { return intervals_; }
  const std::vector<double>& coordinates() const { return xs_; }
  const IntervalLists& lists(std::size_t coordinate_index) const { return lists_[coordinate_index]; }

  /// Lists of the coordinate equal to x, if x is an input coordinate.
  std::optional<IntervalLists> lists_at(double x) const {
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.end() || *it != x) return std::nullopt;
    return lists_[static_cast<std::size_t>(it - xs_.begin())];
  }

  QueryAnswer query(double q) const {
    // Bracketing coordinates: xs[lo] <= q <= xs[hi].
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), q);
    std::optional<std::size_t> lo, hi;
    if (it != xs_.end()) hi = static_cast<std::size_t>(it - xs_.begin());
    if (it != xs_.end() && *it == q) lo = hi;
    else if (it != xs_.begin()) lo = static_cast<std::size_t>(it - xs_.begin()) - 1;

    std::optional<QueryAnswer> best;
    auto consider = [&](const std::optional<Interval>& iv, const char* family) {
      if (!iv) return;
      const Interval ext{std::min(iv->left, q), std::max(iv->right, q)};
      const bool inside = iv->contains(q);
      keep_smaller(best, QueryAnswer{ObjectKind::scsi, ext.right - ext.left, ext,
                                     inside ? Provenance::contained : Provenance::boundary_extension,
                                     family});
    };
    for (const auto& side : {lo, hi}) {
      if (!side) continue;
      const auto& l = lists_[*side];
      consider(l.span, "span");
      consider(l.start, "start");
      consider(l.end, "end");
    }
    return *best;
  }

 private:
  std::vector<double> xs_;
  std::vector<Interval> intervals_;
  std::vector<IntervalLists> lists_;
};

}  // namespace chromaspan
