#pragma once

// Static k-d trees with subtree aggregates.
//
// DominanceIndex<D> answers "best key among the sites whose coordinates satisfy a
// per-dimension threshold constraint". LinfCornerIndex answers "L-infinity nearest
// corner to q among the sites whose filter coordinates satisfy a 2D constraint".
// Both are immutable after construction and safe to query concurrently.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "chromaspan/geometry.hpp"

namespace chromaspan {

enum class Bound : std::uint8_t { none, le, ge, lt, gt };

struct Constraint {
  Bound kind = Bound::none;
  double value = 0.0;

  bool admits(double v) const {
    switch (kind) {
      case Bound::none: return true;
      case Bound::le: return v <= value;
      case Bound::ge: return v >= value;
      case Bound::lt: return v < value;
      case Bound::gt: return v > value;
    }
    return false;
  }
  /// Every value in [lo, hi] satisfies the constraint.
  bool admits_all(double lo, double hi) const {
    switch (kind) {
      case Bound::none: return true;
      case Bound::le: return hi <= value;
      case Bound::ge: return lo >= value;
      case Bound::lt: return hi < value;
      case Bound::gt: return lo > value;
    }
    return false;
  }
  /// Some value in [lo, hi] satisfies the constraint.
  bool admits_any(double lo, double hi) const {
    switch (kind) {
      case Bound::none: return true;
      case Bound::le: return lo <= value;
      case Bound::ge: return hi >= value;
      case Bound::lt: return lo < value;
      case Bound::gt: return hi > value;
    }
    return false;
  }
};

inline Constraint le(double v) { return {Bound::le, v}; }
inline Constraint ge(double v) { return {Bound::ge, v}; }
inline Constraint lt(double v) { return {Bound::lt, v}; }
inline Constraint gt(double v) { return {Bound::gt, v}; }
inline Constraint any() { return {}; }

template <std::size_t D>
using DominanceQuery = std::array<Constraint, D>;

template <std::size_t D>
bool admits(const DominanceQuery<D>& q, const std::array<double, D>& coords) {
  for (std::size_t d = 0; d < D; ++d)
    if (!q[d].admits(coords[d])) return false;
  return true;
}

template <std::size_t D>
struct KeyedSite {
  std::array<double, D> coords{};
  double key = 0.0;
  std::size_t payload = 0;
};

enum class Extremum : std::uint8_t { min, max };

struct Hit {
  double key = 0.0;
  std::size_t payload = 0;
  friend bool operator==(const Hit&, const Hit&) = default;
};

/// Strict "a is preferred over b": extreme key first, then smallest payload.
inline bool preferred(Extremum mode, const Hit& a, const Hit& b) {
  if (a.key != b.key) return mode == Extremum::min ? a.key < b.key : a.key > b.key;
  return a.payload < b.payload;
}

namespace detail {

inline constexpr std::size_t kLeafSize = 8;

template <std::size_t D>
struct Box {
  std::array<double, D> lo, hi;

  static Box empty() {
    Box b;
    b.lo.fill(std::numeric_limits<double>::infinity());
    b.hi.fill(-std::numeric_limits<double>::infinity());
    return b;
  }
  void extend(const std::array<double, D>& p) {
    for (std::size_t d = 0; d < D; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  std::size_t widest() const {
    std::size_t best = 0;
    for (std::size_t d = 1; d < D; ++d)
      if (hi[d] - lo[d] > hi[best] - lo[best]) best = d;
    return best;
  }
};

enum class Overlap { none, partial, full };

template <std::size_t D>
Overlap classify(const DominanceQuery<D>& q, const Box<D>& box) {
  bool full = true;
  for (std::size_t d = 0; d < D; ++d) {
    if (!q[d].admits_any(box.lo[d], box.hi[d])) return Overlap::none;
    full = full && q[d].admits_all(box.lo[d], box.hi[d]);
  }
  return full ? Overlap::full : Overlap::partial;
}

// Builds an implicit k-d tree over `items` (reordered in place). `coords_of` maps an
// item to its split coordinates. Nodes are appended in preorder; returns the root index.
template <std::size_t D, class Item, class Node, class CoordsOf, class MakeNode>
std::size_t build_kd(std::vector<Item>& items, std::vector<Node>& nodes, std::size_t begin,
                     std::size_t end, CoordsOf coords_of, MakeNode make_node) {
  const std::size_t id = nodes.size();
  nodes.push_back(make_node(begin, end));
  if (end - begin <= kLeafSize) return id;
  const std::size_t axis = nodes[id].box.widest();
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(items.begin() + static_cast<std::ptrdiff_t>(begin),
                   items.begin() + static_cast<std::ptrdiff_t>(mid),
                   items.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](const Item& a, const Item& b) { return coords_of(a)[axis] < coords_of(b)[axis]; });
  const std::size_t left = build_kd<D>(items, nodes, begin, mid, coords_of, make_node);
  const std::size_t right = build_kd<D>(items, nodes, mid, end, coords_of, make_node);
  nodes[id].left = left;
  nodes[id].right = right;
  return id;
}

inline constexpr std::size_t kNoChild = std::numeric_limits<std::size_t>::max();

}  // namespace detail

template <std::size_t D>
class DominanceIndex {
 public:
  DominanceIndex() = default;

  DominanceIndex(std::vector<KeyedSite<D>> sites, Extremum mode) : mode_(mode), sites_(std::move(sites)) {
    if (sites_.empty()) return;
    nodes_.reserve(2 * sites_.size() / detail::kLeafSize + 2);
    auto coords_of = [](const KeyedSite<D>& s) -> const std::array<double, D>& { return s.coords; };
    auto make_node = [this](std::size_t b, std::size_t e) {
      Node n;
      n.begin = b;
      n.end = e;
      n.box = detail::Box<D>::empty();
      n.best = {sites_[b].key, sites_[b].payload};
      for (std::size_t i = b; i < e; ++i) {
        n.box.extend(sites_[i].coords);
        const Hit h{sites_[i].key, sites_[i].payload};
        if (preferred(mode_, h, n.best)) n.best = h;
      }
      return n;
    };
    detail::build_kd<D>(sites_, nodes_, 0, sites_.size(), coords_of, make_node);
  }

  Extremum mode() const { return mode_; }
  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  const std::vector<KeyedSite<D>>& sites() const { return sites_; }

  /// Extreme key over all sites satisfying `q`; ties go to the smallest payload.
  std::optional<Hit> best(const DominanceQuery<D>& q) const {
    std::optional<Hit> result;
    if (!nodes_.empty()) search(0, q, result);
    return result;
  }

 private:
  struct Node {
    detail::Box<D> box;
    Hit best;
    std::size_t begin = 0, end = 0;
    std::size_t left = detail::kNoChild, right = detail::kNoChild;
  };

  void search(std::size_t id, const DominanceQuery<D>& q, std::optional<Hit>& result) const {
    const Node& n = nodes_[id];
    if (result && !preferred(mode_, n.best, *result)) return;
    const detail::Overlap o = detail::classify(q, n.box);
    if (o == detail::Overlap::none) return;
    if (o == detail::Overlap::full) {
      result = n.best;
      return;
    }
    if (n.left == detail::kNoChild) {
      for (std::size_t i = n.begin; i < n.end; ++i) {
        const auto& s = sites_[i];
        const Hit h{s.key, s.payload};
        if (admits(q, s.coords) && (!result || preferred(mode_, h, *result))) result = h;
      }
      return;
    }
    // Visit the child with the more promising aggregate first.
    std::size_t a = n.left, b = n.right;
    if (preferred(mode_, nodes_[b].best, nodes_[a].best)) std::swap(a, b);
    search(a, q, result);
    search(b, q, result);
  }

  Extremum mode_ = Extremum::min;
  std::vector<KeyedSite<D>> sites_;
  std::vector<Node> nodes_;
};

/// Brute-force reference for DominanceIndex::best.
template <std::size_t D>
std::optional<Hit> scan_best(const std::vector<KeyedSite<D>>& sites, Extremum mode,
                             const DominanceQuery<D>& q) {
  std::optional<Hit> result;
  for (const auto& s : sites) {
    const Hit h{s.key, s.payload};
    if (admits(q, s.coords) && (!result || preferred(mode, h, *result))) result = h;
  }
  return result;
}

// ---------------------------------------------------------------------------

struct CornerSite {
  std::array<double, 2> filter{};  // coordinates the region constraint applies to
  Point corner;                    // the point distances are measured to
  std::size_t payload = 0;
};

struct CornerHit {
  double distance = 0.0;
  std::size_t payload = 0;
  friend bool operator==(const CornerHit&, const CornerHit&) = default;
};

inline bool closer(const CornerHit& a, const CornerHit& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.payload < b.payload;
}

class LinfCornerIndex {
 public:
  LinfCornerIndex() = default;

  explicit LinfCornerIndex(std::vector<CornerSite> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) return;
    auto coords_of = [](const CornerSite& s) -> const std::array<double, 2>& { return s.filter; };
    auto make_node = [this](std::size_t b, std::size_t e) {
      Node n;
      n.begin = b;
      n.end = e;
      n.box = detail::Box<2>::empty();
      n.corners = detail::Box<2>::empty();
      for (std::size_t i = b; i < e; ++i) {
        n.box.extend(sites_[i].filter);
        n.corners.extend({sites_[i].corner.x, sites_[i].corner.y});
      }
      return n;
    };
    detail::build_kd<2>(sites_, nodes_, 0, sites_.size(), coords_of, make_node);
  }

  /// Sites whose filter coordinates equal their corner.
  static LinfCornerIndex from_corners(const std::vector<std::pair<Point, std::size_t>>& corners) {
    std::vector<CornerSite> sites;
    sites.reserve(corners.size());
    for (const auto& [p, id] : corners) sites.push_back({{p.x, p.y}, p, id});
    return LinfCornerIndex(std::move(sites));
  }

  std::size_t size() const { return sites_.size(); }
  const std::vector<CornerSite>& sites() const { return sites_; }

  std::optional<CornerHit> nearest(const DominanceQuery<2>& region, Point q) const {
    std::optional<CornerHit> result;
    if (!nodes_.empty()) search(0, region, q, result);
    return result;
  }

 private:
  struct Node {
    detail::Box<2> box;
    detail::Box<2> corners;
    std::size_t begin = 0, end = 0;
    std::size_t left = detail::kNoChild, right = detail::kNoChild;
  };

  static double lower_bound(const detail::Box<2>& b, Point q) {
    const double dx = std::max({0.0, b.lo[0] - q.x, q.x - b.hi[0]});
    const double dy = std::max({0.0, b.lo[1] - q.y, q.y - b.hi[1]});
    return std::max(dx, dy);
  }

  void search(std::size_t id, const DominanceQuery<2>& region, Point q,
              std::optional<CornerHit>& result) const {
    const Node& n = nodes_[id];
    if (result && lower_bound(n.corners, q) > result->distance) return;
    if (detail::classify(region, n.box) == detail::Overlap::none) return;
    if (n.left == detail::kNoChild) {
      for (std::size_t i = n.begin; i < n.end; ++i) {
        const auto& s = sites_[i];
        if (!admits(region, s.filter)) continue;
        const CornerHit h{linf_distance(q, s.corner), s.payload};
        if (!result || closer(h, *result)) result = h;
      }
      return;
    }
    std::size_t a = n.left, b = n.right;
    if (lower_bound(nodes_[b].corners, q) < lower_bound(nodes_[a].corners, q)) std::swap(a, b);
    search(a, region, q, result);
    search(b, region, q, result);
  }

  std::vector<CornerSite> sites_;
  std::vector<Node> nodes_;
};

inline std::optional<CornerHit> scan_nearest(const std::vector<CornerSite>& sites,
                                             const DominanceQuery<2>& region, Point q) {
  std::optional<CornerHit> result;
  for (const auto& s : sites) {
    if (!admits(region, s.filter)) continue;
    const CornerHit h{linf_distance(q, s.corner), s.payload};
    if (!result || closer(h, *result)) result = h;
  }
  return result;
}

}  // namespace chromaspan
