#include <gtest/gtest.h>

#include <numbers>

#include "chromaspan/oracle.hpp"
#include "chromaspan/triangles.hpp"
#include "test_support.hpp"

using namespace chromaspan;
using std::numbers::sqrt3;

TEST(ScstFrames, ConventionsSelfCheck) { EXPECT_NO_THROW(validate_frame_conventions()); }

TEST(ScstEnumerate, HorizontalPair) {
  const PointSet pts{{0, 0, 0}, {1, 0, 1}};
  const auto tris = enumerate_minimal_triangles(pts);
  ASSERT_EQ(tris.size(), 1u);
  EXPECT_NEAR(tris[0].side(), 1.0, 1e-12);
}

TEST(ScstEnumerate, VerticalPair) {
  const PointSet pts{{0, 0, 0}, {0, 1, 1}};
  const auto tris = enumerate_minimal_triangles(pts);
  ASSERT_FALSE(tris.empty());
  for (const auto& t : tris) EXPECT_NEAR(t.side(), 2 / sqrt3, 1e-12);
}

TEST(ScstEnumerate, SingleColorZeroSize) {
  const auto tris = enumerate_minimal_triangles(PointSet{{3, 4, 0}, {5, 1, 0}});
  ASSERT_EQ(tris.size(), 2u);
  for (const auto& t : tris) EXPECT_NEAR(t.side(), 0.0, 1e-12);
}

TEST(ScstQuery, Examples) {
  const PointSet pts{{0, 0, 0}, {1, 0, 1}};
  const ScstIndex idx(pts);
  const auto above = idx.query({0.5, 2});
  EXPECT_NEAR(above.size, 4 / sqrt3, 1e-12);
  EXPECT_TRUE(verify_answer(above, pts, {0.5, 2}));
  const Point centroid{0.5, sqrt3 / 6};
  const auto in = idx.query(centroid);
  EXPECT_NEAR(in.size, 1.0, 1e-12);
  EXPECT_EQ(in.provenance, Provenance::contained);
}

TEST(ScstEnumerate, MinimalityShrinkTest) {
  auto rng = testing_support::rng_for(51);
  for (int inst = 0; inst < 60; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 4);
    const auto pts = testing_support::random_points(rng, testing_support::uniform_int(rng, k, 25), k, 0, 20, inst % 2);
    const int kk = color_count(pts);
    for (const auto& t : enumerate_minimal_triangles(pts)) EXPECT_TRUE(is_minimal_triangle(t, pts, kk));
  }
}

TEST(ScstQuery, RegionsAgreeWithDirectExtension) {
  auto rng = testing_support::rng_for(52);
  const auto pts = testing_support::random_points(rng, 30, 3, 0, 20);
  const ScstIndex idx(pts);
  for (int t = 0; t < 200; ++t) {
    const Point q = testing_support::random_query(rng, pts);
    for (const auto& a : {idx.query_contained(q), idx.query_vertex_regions(q), idx.query_edge_regions(q)}) {
      if (!a) continue;
      EXPECT_TRUE(testing_support::rel_eq(a->size, std::get<FrameTriangle>(a->shape).side()));
      EXPECT_TRUE(verify_answer(*a, pts, q));
    }
  }
}

TEST(ScstQuery, RandomAgainstOracle) {
  auto rng = testing_support::rng_for(53);
  for (int inst = 0; inst < 150; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 5);
    const auto pts =
        testing_support::random_points(rng, testing_support::uniform_int(rng, k, 30), k, 0, 50, inst % 3 == 0);
    const ScstIndex idx(pts);
    for (int t = 0; t < 10; ++t) {
      const Point q = testing_support::random_query(rng, pts);
      const auto a = idx.query(q);
      EXPECT_TRUE(testing_support::rel_eq(a.size, oracle::oracle_scst(pts, q).side)) << inst;
      EXPECT_TRUE(verify_answer(a, pts, q));
    }
  }
}

TEST(ScstQuery, NeverWorseThanGrid) {
  auto rng = testing_support::rng_for(54);
  for (int inst = 0; inst < 20; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 3);
    const auto pts = testing_support::random_points(rng, testing_support::uniform_int(rng, k, 8), k, 0, 6, true);
    const Point q{std::round(std::uniform_real_distribution<double>(-1, 7)(rng)),
                  std::round(std::uniform_real_distribution<double>(-1, 7)(rng))};
    EXPECT_LE(ScstIndex(pts).query(q).size, oracle::grid_scst(pts, q, 0.25) + 1e-9);
  }
}
