#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>

#include "chromaspan/geometry.hpp"

namespace testing_support {

/// Base seed; CHROMASPAN_SEED overrides it.
inline std::uint64_t base_seed() {
  if (const char* s = std::getenv("CHROMASPAN_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240601ULL;
}

inline std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(base_seed() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

/// n points, every color in [0, k) present, coordinates uniform in [lo, hi]
/// (rounded to integers when `snap`, which produces ties and duplicates).
inline chromaspan::PointSet random_points(std::mt19937_64& rng, int n, int k, double lo, double hi, bool snap = false,
                                          bool one_d = false) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::uniform_int_distribution<int> col(0, k - 1);
  chromaspan::PointSet pts;
  for (int i = 0; i < n; ++i) {
    double x = u(rng), y = one_d ? 0.0 : u(rng);
    if (snap) {
      x = std::round(x);
      y = std::round(y);
    }
    pts.push_back({x, y, i < k ? i : col(rng)});
  }
  std::shuffle(pts.begin(), pts.end(), rng);
  return pts;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// A query drawn from `factor` times the bounding box of pts (same centre).
inline chromaspan::Point random_query(std::mt19937_64& rng, const chromaspan::PointSet& pts, double factor = 3.0) {
  double lx = pts[0].x, hx = lx, ly = pts[0].y, hy = ly;
  for (const auto& p : pts) {
    lx = std::min(lx, p.x);
    hx = std::max(hx, p.x);
    ly = std::min(ly, p.y);
    hy = std::max(hy, p.y);
  }
  const double cx = (lx + hx) / 2, cy = (ly + hy) / 2;
  const double w = std::max(hx - lx, 1.0) * factor / 2, h = std::max(hy - ly, 1.0) * factor / 2;
  std::uniform_real_distribution<double> ux(cx - w, cx + w), uy(cy - h, cy + h);
  return {ux(rng), uy(rng)};
}

inline bool rel_eq(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testing_support
