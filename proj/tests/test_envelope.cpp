#include <gtest/gtest.h>

#include <numbers>

#include "chromaspan/envelope.hpp"
#include "chromaspan/oracle.hpp"
#include "test_support.hpp"

using namespace chromaspan;

namespace {
const PointSet kTwo{{0, 1, 0}, {2, 1, 1}};

// max over colors of the nearest squared distance from (x, y): independent of the envelope.
double direct_value(const PointSet& pts, double x, double y) {
  std::vector<double> near(static_cast<std::size_t>(color_count(pts)), std::numeric_limits<double>::infinity());
  for (const auto& p : pts)
    near[static_cast<std::size_t>(p.color)] = std::min(near[static_cast<std::size_t>(p.color)], distance2({x, y}, p.pos()));
  return *std::max_element(near.begin(), near.end());
}
}  // namespace

TEST(Envelope, TwoPointsOnLineZero) {
  const auto env = build_envelope(kTwo, 0);
  ASSERT_EQ(env.arcs().size(), 2u);
  std::vector<EnvelopeVertex> crossings;
  for (const auto& v : env.vertices())
    if (v.kind == VertexKind::arc_intersection) crossings.push_back(v);
  ASSERT_EQ(crossings.size(), 1u);
  EXPECT_DOUBLE_EQ(crossings[0].x, 1);
  EXPECT_DOUBLE_EQ(crossings[0].value, 2);
  const auto m = env.global_min();
  EXPECT_DOUBLE_EQ(m.x, 1);
  EXPECT_DOUBLE_EQ(m.radius(), std::sqrt(2.0));
}

TEST(Envelope, PointwiseMatchesDirect) {
  auto rng = testing_support::rng_for(71);
  std::uniform_real_distribution<double> u(-150, 250);
  for (int inst = 0; inst < 30; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 5);
    const auto pts = testing_support::random_points(rng, testing_support::uniform_int(rng, k, 40), k, 0, 100,
                                                    inst % 3 == 0);
    const double line = u(rng) / 2;
    const auto env = build_envelope(pts, line);
    for (int s = 0; s < 100; ++s) {
      const double x = u(rng);
      EXPECT_TRUE(testing_support::rel_eq(env.value(x), direct_value(pts, x, line), 1e-9));
    }
    for (std::size_t i = 1; i < env.arcs().size(); ++i) EXPECT_NE(env.arcs()[i].owner, env.arcs()[i - 1].owner);
  }
}

TEST(Constrained, QueryInsideAndAbove) {
  const auto env = build_envelope(kTwo, 0);
  const auto in = env.query_constrained({1, 0.5});
  EXPECT_DOUBLE_EQ(in.radius(), std::sqrt(2.0));
  const Point high{1, 3};
  EXPECT_NEAR(env.query_constrained(high).radius(), oracle::oracle_constrained_scsc(kTwo, 0, high).radius, 1e-9);
}

TEST(Constrained, CrossingBranches) {
  // q far to one side: only one crossing exists; q between clusters: two.
  const PointSet pts{{0, 1, 0}, {2, 1, 1}, {10, 3, 0}, {12, 2, 1}};
  const auto env = build_envelope(pts, 0);
  for (Point q : {Point{-20, 1}, Point{30, 4}, Point{6, 8}, Point{1, 0.2}, Point{6, 0}}) {
    EXPECT_NEAR(env.query_constrained(q).radius(), oracle::oracle_constrained_scsc(pts, 0, q).radius,
                1e-6 * std::max(1.0, oracle::oracle_constrained_scsc(pts, 0, q).radius))
        << q.x << "," << q.y;
  }
}

TEST(Constrained, BothCrossingBranchesExercised) {
  // Zero crossings (f_q below the envelope everywhere) and crossings on both sides.
  auto rng = testing_support::rng_for(78);
  int none = 0, both = 0;
  for (int inst = 0; inst < 400; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 4);
    const auto pts = testing_support::random_points(rng, testing_support::uniform_int(rng, k, 20), k, 0, 100);
    const auto env = build_envelope(pts, 0);
    Point q = testing_support::random_query(rng, pts, 2.0);
    q.y = std::abs(q.y);
    const auto xs = env.crossings(q);
    const bool left = std::any_of(xs.begin(), xs.end(), [&](double x) { return x < q.x; });
    const bool right = std::any_of(xs.begin(), xs.end(), [&](double x) { return x >= q.x; });
    none += xs.empty();
    both += left && right;
    const double want = oracle::oracle_constrained_scsc(pts, 0, q).radius;
    EXPECT_NEAR(env.query_constrained(q).radius(), want, 1e-6 * std::max(1.0, want));
  }
  EXPECT_GT(none, 0);
  EXPECT_GT(both, 0);
}

// Claimed property: when f_q lies above the envelope at x(q), it crosses the envelope
// exactly once on each side. The envelope is not unimodal, so f_q may cross it several
// times or not at all on a side; the query only relies on the nearest crossings.
TEST(Constrained, ExactlyOneCrossingPerSideClaim) {
  auto rng = testing_support::rng_for(79);
  int cases = 0, violations = 0;
  for (int inst = 0; inst < 400; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 4);
    const auto pts = testing_support::random_points(rng, testing_support::uniform_int(rng, k, 20), k, 0, 100);
    const auto env = build_envelope(pts, 0);
    Point q = testing_support::random_query(rng, pts, 2.0);
    q.y = std::abs(q.y);
    if (!(distance_curve_eval(q, 0, q.x) > env.value(q.x))) continue;
    ++cases;
    const auto xs = env.crossings(q);
    const auto left = std::count_if(xs.begin(), xs.end(), [&](double x) { return x < q.x; });
    if (left != 1 || static_cast<long>(xs.size()) - left != 1) ++violations;
  }
  EXPECT_EQ(violations, 0) << violations << " of " << cases << " cases";
}

TEST(Constrained, RandomAgainstOracle) {
  auto rng = testing_support::rng_for(72);
  std::uniform_real_distribution<double> u(-50, 150);
  for (int inst = 0; inst < 100; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 4);
    const auto pts = testing_support::random_points(rng, testing_support::uniform_int(rng, k, 20), k, 0, 100);
    const double line = u(rng);
    const auto env = build_envelope(pts, line);
    const Point q{u(rng), u(rng)};
    const double want = oracle::oracle_constrained_scsc(pts, line, q).radius;
    EXPECT_NEAR(env.query_constrained(q).radius(), want, 1e-6 * std::max(1.0, want)) << inst;
  }
}

TEST(Hq, Examples) {
  const HqFamily fam(kTwo);
  EXPECT_DOUBLE_EQ(fam.query_hq({1, 0}).size, std::sqrt(2.0));
  const PointSet flat{{0, 0, 0}, {2, 0, 1}};
  EXPECT_DOUBLE_EQ(HqFamily(flat).query_hq({1, 2}).size, std::sqrt(5.0));
}

TEST(Hq, RandomAgainstOracleAndVerified) {
  auto rng = testing_support::rng_for(73);
  for (int inst = 0; inst < 60; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 4);
    const auto pts = testing_support::random_points(rng, testing_support::uniform_int(rng, k, 16), k, 0, 100);
    const HqFamily fam(pts);
    const Point q = testing_support::random_query(rng, pts, 1.5);
    const auto a = fam.query_hq(q);
    const double want = oracle::oracle_constrained_scsc(pts, q.y, q).radius;
    EXPECT_NEAR(a.size, want, 1e-6 * std::max(1.0, want));
    EXPECT_TRUE(verify_answer(a, pts, q));
  }
}

TEST(Hq, BracketedExactOnPrecomputedLines) {
  auto rng = testing_support::rng_for(74);
  for (int inst = 0; inst < 40; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 4);
    const auto pts = testing_support::random_points(rng, testing_support::uniform_int(rng, k, 16), k, 0, 100);
    const HqFamily fam(pts);
    const double y = pts[static_cast<std::size_t>(inst) % pts.size()].y;
    const Point q{std::uniform_real_distribution<double>(-50, 150)(rng), y};
    EXPECT_NEAR(fam.query_hq_bracketed(q).size, fam.query_hq(q).size, 1e-6 * std::max(1.0, fam.query_hq(q).size));
  }
}

TEST(Orientations, CountAndValidation) {
  EXPECT_EQ(orientation_count(1.0), 4u);
  EXPECT_EQ(orientation_count(0.5), 7u);
  EXPECT_EQ(orientation_count(std::numbers::pi / 4), 4u);
  EXPECT_THROW(orientation_count(0), std::invalid_argument);
  EXPECT_THROW(orientation_count(1.5), std::invalid_argument);
}

TEST(Orientations, CapExceeded) {
  auto rng = testing_support::rng_for(75);
  const auto pts = testing_support::random_points(rng, 400, 2, 0, 10);
  EXPECT_THROW(OrientationFamily(pts, 1e-3), CapExceeded);
}

TEST(Orientations, IdentityOrientationMatchesHq) {
  auto rng = testing_support::rng_for(76);
  const auto pts = testing_support::random_points(rng, 15, 3, 0, 100);
  const OrientationFamily fam(pts, 1.0);
  const HqFamily direct(pts);
  for (int t = 0; t < 20; ++t) {
    const Point q = testing_support::random_query(rng, pts);
    EXPECT_NEAR(fam.family(0).query_hq(q).size, direct.query_hq(q).size, 1e-9 * std::max(1.0, direct.query_hq(q).size));
    EXPECT_LE(fam.query_type2_approx(q).size, direct.query_hq(q).size + 1e-9);
  }
}

TEST(Approximation, RegressionFiveQuarters) {
  const PointSet pts{{0, 0, 0}, {2, 0, 1}};
  const Point q{1, 2};
  for (double eps : {std::numbers::pi / 4, 0.5, 0.1}) {
    const ScscIndex idx(pts, eps);
    const auto a = idx.query(q);
    EXPECT_GE(a.size, 1.25 - 1e-9);
    EXPECT_LE(a.size, (1 + eps) * 1.25 + 1e-9) << eps;
    EXPECT_TRUE(verify_answer(a, pts, q));
  }
}

TEST(Approximation, RandomWithinFactor) {
  auto rng = testing_support::rng_for(77);
  for (int inst = 0; inst < 40; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 4);
    const auto pts = testing_support::random_points(rng, testing_support::uniform_int(rng, k, 12), k, 0, 100);
    const double eps = inst % 2 ? 0.5 : 0.1;
    const ScscIndex idx(pts, eps);
    const Point q = testing_support::random_query(rng, pts);
    const auto a = idx.query(q);
    const double opt = oracle::oracle_scsc_exact(pts, q).radius;
    EXPECT_GE(a.size, opt - 1e-9 * std::max(1.0, opt));
    EXPECT_LE(a.size, (1 + eps) * opt + 1e-9 * std::max(1.0, opt));
    EXPECT_TRUE(verify_answer(a, pts, q));
  }
}
