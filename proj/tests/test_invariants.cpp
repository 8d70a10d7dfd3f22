// Structural invariants over random instances. Run alone with
//   ./test_invariants [--gtest_filter=...]   (CHROMASPAN_SEED varies the instances)

#include <gtest/gtest.h>

#include "chromaspan/chromaspan.hpp"
#include "test_support.hpp"

using namespace chromaspan;
using testing_support::rng_for;
using testing_support::uniform_int;

TEST(Invariants, IntervalsAreNotNested) {
  auto rng = rng_for(101);
  for (int inst = 0; inst < 100; ++inst) {
    const int k = uniform_int(rng, 1, 6);
    const auto pts = testing_support::random_points(rng, uniform_int(rng, k, 80), k, 0, 100, inst % 2, true);
    const auto ivs = enumerate_minimal_intervals(pts);
    for (std::size_t i = 1; i < ivs.size(); ++i) {
      EXPECT_LT(ivs[i - 1].left, ivs[i].left);
      EXPECT_LT(ivs[i - 1].right, ivs[i].right);
    }
  }
}

TEST(Invariants, ShrinkTestMinimality) {
  auto rng = rng_for(102);
  for (int inst = 0; inst < 60; ++inst) {
    const int k = uniform_int(rng, 1, 4);
    const auto pts = testing_support::random_points(rng, uniform_int(rng, k, 25), k, 0, 30, inst % 2);
    const int kk = color_count(pts);
    for (const auto& r : enumerate_minimal_rects(pts)) EXPECT_TRUE(is_minimal_rect(r, pts, kk));
    for (const auto& t : enumerate_minimal_triangles(pts)) EXPECT_TRUE(is_minimal_triangle(t, pts, kk));
    // A minimal square spans all colors and no smaller color-spanning square fits inside it.
    const auto squares = enumerate_minimal_squares(pts);
    for (const auto& s : squares) {
      EXPECT_TRUE(verify_answer({ObjectKind::scss, s.side, s, Provenance::contained, ""}, pts, {s.l, s.b}));
      for (const auto& r : enumerate_minimal_rects(pts))
        if (s.rect().contains(r)) {
          EXPECT_GE(s.side, std::max(r.width(), r.height()) - 1e-9);
        }
    }
  }
}

TEST(Invariants, SameColorStarsDisjoint) {
  auto rng = rng_for(103);
  std::uniform_real_distribution<double> u(0, 1);
  for (int inst = 0; inst < 20; ++inst) {
    const int k = uniform_int(rng, 2, 4);
    const auto pts = testing_support::random_points(rng, uniform_int(rng, k + 2, 14), k, 0, 100);
    const auto box = cell_box(pts);
    std::vector<StarPolygon> stars;
    for (std::size_t i = 0; i < pts.size(); ++i) stars.push_back(star_polygon(pts, k, i, box));
    for (int s = 0; s < 500; ++s) {
      const Point z{box.lo.x + u(rng) * (box.hi.x - box.lo.x), box.lo.y + u(rng) * (box.hi.y - box.lo.y)};
      std::vector<int> owners(static_cast<std::size_t>(k), 0);
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (stars[i].contains(z, -1e-7)) ++owners[static_cast<std::size_t>(pts[i].color)];
      for (int c : owners) EXPECT_LE(c, 1);
    }
  }
}

TEST(Invariants, LiftMatchesDisk) {
  auto rng = rng_for(104);
  std::uniform_real_distribution<double> u(-100, 100), r(0, 60);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const Circle c{{u(rng), u(rng)}, r(rng)};
    const Point p{u(rng), u(rng)};
    const double d = distance(p, c.center);
    if (std::abs(d - c.radius) < 1e-6) continue;
    ++checked;
    EXPECT_EQ(point_below_lift(p, lift_circle(c)), d <= c.radius);
  }
  EXPECT_GT(checked, 9900);
}

TEST(Invariants, EnvelopePointwise) {
  auto rng = rng_for(105);
  std::uniform_real_distribution<double> u(-100, 200);
  for (int inst = 0; inst < 30; ++inst) {
    const int k = uniform_int(rng, 1, 5);
    const auto pts = testing_support::random_points(rng, uniform_int(rng, k, 30), k, 0, 100);
    const double line = u(rng) / 2;
    const auto env = build_envelope(pts, line);
    for (int s = 0; s < 100; ++s) {
      const double x = u(rng);
      std::vector<double> nearest(static_cast<std::size_t>(k), std::numeric_limits<double>::infinity());
      for (const auto& p : pts)
        nearest[static_cast<std::size_t>(p.color)] =
            std::min(nearest[static_cast<std::size_t>(p.color)], distance2({x, line}, p.pos()));
      EXPECT_TRUE(testing_support::rel_eq(env.value(x), *std::max_element(nearest.begin(), nearest.end())));
    }
  }
}

// Claimed invariant: for z strictly between two consecutive point lines and z' its
// vertical projection onto the lower one, the distance ranks of all points agree.
// It does not hold: moving z vertically crosses the bisector of any two points that
// are not vertically aligned, e.g. (0,0) and (1,1) seen from (0.2,0) and (0.2,0.9). The
// check is expected to report violations.
TEST(Invariants, DistanceRankPreservedBetweenLines) {
  auto rng = rng_for(106);
  int violations = 0, trials = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const int k = uniform_int(rng, 2, 4);
    const auto pts = testing_support::random_points(rng, uniform_int(rng, k + 2, 15), k, 0, 100);
    const HqFamily fam(pts);
    const auto& ys = fam.line_ys();
    for (int t = 0; t < 10; ++t) {
      const std::size_t i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(ys.size()) - 2));
      if (!(ys[i] < ys[i + 1])) continue;
      const double y = std::uniform_real_distribution<double>(ys[i], ys[i + 1])(rng);
      if (y == ys[i]) continue;
      const double x = testing_support::random_query(rng, pts, 1.5).x;
      ++trials;
      if (distance_rank(pts, {x, y}) != distance_rank(pts, {x, ys[i]})) ++violations;
    }
  }
  EXPECT_EQ(violations, 0) << violations << " of " << trials << " queries changed distance ranks";
}
