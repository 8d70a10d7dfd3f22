#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chromaspan/geometry.hpp"
#include "test_support.hpp"

using namespace chromaspan;
using testing_support::rng_for;

TEST(Tolerance, RelativeAboveOne) {
  EXPECT_TRUE(approx_eq(1.0, 1.0 + 5e-10));
  EXPECT_FALSE(approx_eq(1.0, 1.0 + 5e-9));
  EXPECT_TRUE(approx_eq(1e6, 1e6 + 5e-4));
  EXPECT_TRUE(approx_le(2.0, 2.0));
}

TEST(Colors, MissingColorThrows) {
  PointSet pts{{0, 0, 0}, {1, 1, 2}};
  try {
    require_all_colors(pts);
    FAIL();
  } catch (const MissingColor& e) {
    EXPECT_EQ(e.color(), 1);
  }
  EXPECT_THROW(require_all_colors(PointSet{}), MissingColor);
  EXPECT_EQ(require_all_colors(PointSet{{0, 0, 1}, {0, 0, 0}}), 2);
}

TEST(TriFrame, OriginAndUnitVector) {
  const auto o = tri_frame({0, 0});
  EXPECT_EQ(o.x_alpha, 0);
  EXPECT_EQ(o.y_alpha, 0);
  EXPECT_EQ(o.x_beta, 0);
  EXPECT_EQ(o.y_beta, 0);
  EXPECT_DOUBLE_EQ(tri_frame({1, 0}).y_alpha, std::sqrt(3.0) / 2);
}

TEST(TriFrame, RotationsPreserveDistances) {
  auto rng = rng_for(1);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 200; ++i) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const auto fa = tri_frame(a), fb = tri_frame(b);
    EXPECT_NEAR(std::hypot(fa.x_alpha - fb.x_alpha, fa.y_alpha - fb.y_alpha), distance(a, b), 1e-9);
    EXPECT_NEAR(std::hypot(fa.x_beta - fb.x_beta, fa.y_beta - fb.y_beta), distance(a, b), 1e-9);
  }
}

TEST(TrianglePredicates, CentroidVertexFarPoint) {
  const FrameTriangle t = frame_triangle_from({0, 0}, 1.0);
  const Point c = (1.0 / 3.0) * (t.bottom_left() + t.bottom_right() + t.apex());
  for (Point p : {c, t.apex(), t.bottom_left(), t.bottom_right()}) {
    EXPECT_TRUE(point_in_triangle_direct(p, t));
    EXPECT_TRUE(point_in_triangle_frames(p, t));
  }
  const Point far = c + Point{2.0, 0.0};
  EXPECT_FALSE(point_in_triangle_direct(far, t));
  EXPECT_FALSE(point_in_triangle_frames(far, t));
}

TEST(TrianglePredicates, VerticesFromLevels) {
  const FrameTriangle t = frame_triangle_from({1, 2}, 3.0);
  EXPECT_NEAR(t.bottom_left().x, 1, 1e-12);
  EXPECT_NEAR(t.bottom_right().x, 4, 1e-12);
  EXPECT_NEAR(t.apex().x, 2.5, 1e-12);
  EXPECT_NEAR(t.apex().y, 2 + 3 * std::sqrt(3.0) / 2, 1e-12);
  EXPECT_NEAR(t.side(), 3.0, 1e-12);
}

TEST(TrianglePredicates, FramesMatchDirectOnRandomPairs) {
  auto rng = rng_for(2);
  std::uniform_real_distribution<double> u(-10, 10), s(0.1, 8);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const FrameTriangle t = frame_triangle_from({u(rng), u(rng)}, s(rng));
    const Point p{u(rng), u(rng)};
    const Point a = t.bottom_left(), b = t.bottom_right(), c = t.apex();
    const double m = 1e-7;
    if (std::abs(orient(a, b, p)) < m || std::abs(orient(b, c, p)) < m || std::abs(orient(c, a, p)) < m) continue;
    EXPECT_EQ(point_in_triangle_frames(p, t), point_in_triangle_direct(p, t));
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(Linf, Examples) {
  EXPECT_EQ(linf_distance({0, 0}, {0, 0}), 0);
  EXPECT_EQ(linf_distance({0, 0}, {2, 2}), 2);
  EXPECT_EQ(linf_distance({0, 0}, {3, -1}), 3);
}

TEST(Lift, UnitCircle) {
  const auto pl = lift_circle({{0, 0}, 1});
  EXPECT_EQ(pl.a, 0);
  EXPECT_EQ(pl.b, 0);
  EXPECT_EQ(pl.c, 1);
  EXPECT_TRUE(point_below_lift({0, 0}, pl));
  EXPECT_FALSE(point_below_lift({2, 0}, pl));
  EXPECT_TRUE(point_below_lift({1, 0}, pl));  // boundary counts
}

TEST(Lift, MatchesDiskMembership) {
  auto rng = rng_for(3);
  std::uniform_real_distribution<double> u(-100, 100), r(0, 60);
  for (int i = 0; i < 10000; ++i) {
    const Circle c{{u(rng), u(rng)}, r(rng)};
    const Point p{u(rng), u(rng)};
    const double d = distance(p, c.center);
    if (std::abs(d - c.radius) < 1e-6) continue;  // too close to call at double precision
    EXPECT_EQ(point_below_lift(p, lift_circle(c)), d <= c.radius);
  }
}

TEST(Bisector, Examples) {
  auto a = bisector_line_intersection({1, 0}, {0, 1}, Line::horizontal(0));
  ASSERT_TRUE(a);
  EXPECT_NEAR(a->x, 0, 1e-12);
  EXPECT_NEAR(a->y, 0, 1e-12);
  EXPECT_FALSE(bisector_line_intersection({0, 2}, {0, 4}, Line::horizontal(0)));
  auto b = bisector_line_intersection({0, 1}, {2, 1}, Line::horizontal(0));
  ASSERT_TRUE(b);
  EXPECT_NEAR(b->x, 1, 1e-12);
}

TEST(DistanceCurves, Eval) {
  EXPECT_EQ(distance_curve_eval({0, 1}, 0, 0), 1);
  EXPECT_EQ(distance_curve_eval({0, 1}, 0, 1), 2);
  EXPECT_EQ(distance_curve_eval({2, 1}, 0, 0), 5);
}

TEST(DistanceCurves, Intersection) {
  EXPECT_DOUBLE_EQ(*curve_intersection_x({0, 1}, {2, 1}, 0), 1);
  EXPECT_FALSE(curve_intersection_x({0, 1}, {0, 3}, 0));
  EXPECT_DOUBLE_EQ(*curve_intersection_x({0, 1}, {4, 3}, 0), 3);
  EXPECT_THROW(curve_intersection_x({0, 1}, {0, -1}, 0), CoincidentCurves);
  auto rng = rng_for(4);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int i = 0; i < 500; ++i) {
    const Point p{u(rng), u(rng)}, q{u(rng), u(rng)};
    const double L = u(rng);
    const auto x = curve_intersection_x(p, q, L);
    ASSERT_TRUE(x);
    EXPECT_TRUE(testing_support::rel_eq(distance_curve_eval(p, L, *x), distance_curve_eval(q, L, *x), 1e-9));
  }
}

TEST(Reflect, BelowLineOnly) {
  const PointSet pts{{0, -1, 0}, {0, 1, 1}, {3, 0, 0}};
  const auto r = reflect_below_line(pts, 0);
  EXPECT_EQ(r[0], (ColoredPoint{0, 1, 0}));
  EXPECT_EQ(r[1], pts[1]);
  EXPECT_EQ(r[2], pts[2]);
}

TEST(Rotate, IdentityQuarterTurnAndDistances) {
  EXPECT_EQ(rotate({1, 2}, 0), (Point{1, 2}));
  const Point r = rotate({1, 0}, std::numbers::pi / 2);
  EXPECT_NEAR(r.x, 0, 1e-15);
  EXPECT_NEAR(r.y, 1, 1e-15);
  auto rng = rng_for(5);
  const auto pts = testing_support::random_points(rng, 30, 3, -10, 10);
  const auto rot = rotate_point_set(pts, 0.7);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      EXPECT_TRUE(testing_support::rel_eq(distance(pts[i].pos(), pts[j].pos()), distance(rot[i].pos(), rot[j].pos()),
                                          1e-12));
}

TEST(Circumcircle, RightTriangleAndCollinear) {
  const auto c = circumcircle({0, 0}, {2, 0}, {1, 2});
  ASSERT_TRUE(c);
  EXPECT_NEAR(c->center.x, 1, 1e-12);
  EXPECT_NEAR(c->center.y, 0.75, 1e-12);
  EXPECT_NEAR(c->radius, 1.25, 1e-12);
  EXPECT_FALSE(circumcircle({0, 0}, {1, 1}, {2, 2}));
}
