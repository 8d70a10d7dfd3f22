#include <gtest/gtest.h>

#include "chromaspan/intervals.hpp"
#include "chromaspan/oracle.hpp"
#include "test_support.hpp"

using namespace chromaspan;

namespace {
const PointSet kFour{{1, 0, 0}, {2, 0, 1}, {3, 0, 0}, {5, 0, 1}};
}

TEST(ScsiEnumerate, FourPoints) {
  const std::vector<Interval> expect{{1, 2}, {2, 3}, {3, 5}};
  EXPECT_EQ(enumerate_minimal_intervals(kFour), expect);
}

TEST(ScsiEnumerate, SingleColor) {
  const std::vector<Interval> expect{{4, 4}, {7, 7}};
  EXPECT_EQ(enumerate_minimal_intervals(PointSet{{4, 0, 0}, {7, 0, 0}}), expect);
}

TEST(ScsiEnumerate, MissingColor) {
  EXPECT_THROW(enumerate_minimal_intervals(PointSet{{1, 0, 0}, {2, 0, 2}}), MissingColor);
}

TEST(ScsiLists, StartEndSpan) {
  const ScsiIndex idx(kFour);
  const auto at2 = idx.lists_at(2);
  ASSERT_TRUE(at2);
  EXPECT_EQ(at2->start, (Interval{2, 3}));
  EXPECT_EQ(at2->end, (Interval{1, 2}));
  EXPECT_FALSE(at2->span);
  EXPECT_EQ(idx.lists_at(1)->start, (Interval{1, 2}));
  EXPECT_EQ(idx.lists_at(5)->end, (Interval{3, 5}));
  EXPECT_FALSE(idx.lists_at(4));
}

TEST(ScsiQuery, Examples) {
  const ScsiIndex idx(kFour);
  EXPECT_EQ(idx.query(2.5).size, 1);
  EXPECT_EQ(idx.query(1).size, 1);
  EXPECT_EQ(idx.query(1).provenance, Provenance::contained);
  const auto left = idx.query(0);
  EXPECT_EQ(left.size, 2);
  EXPECT_EQ(left.provenance, Provenance::boundary_extension);
  EXPECT_EQ(std::get<Interval>(left.shape), (Interval{0, 2}));
  EXPECT_EQ(idx.query(9).size, 6);
}

TEST(ScsiQuery, SpanListInteriorCoordinate) {
  // x=4 lies strictly inside [3,6] only; its own start/end lists are far larger.
  const PointSet pts{{0, 0, 1}, {3, 0, 0}, {4, 0, 0}, {6, 0, 1}, {20, 0, 0}};
  const ScsiIndex idx(pts);
  EXPECT_EQ(idx.query(4).size, 2);
  EXPECT_EQ(idx.query(4).size, oracle::oracle_scsi(pts, 4).length);
}

TEST(ScsiQuery, RandomAgainstOracle) {
  auto rng = testing_support::rng_for(21);
  for (int inst = 0; inst < 200; ++inst) {
    const int k = testing_support::uniform_int(rng, 1, 6);
    const int n = testing_support::uniform_int(rng, k, 60);
    const auto pts = testing_support::random_points(rng, n, k, 0, 100, inst % 2 == 0, true);
    const ScsiIndex idx(pts);
    for (int t = 0; t < 10; ++t) {
      const double q = t < 3 ? pts[static_cast<std::size_t>(t) % pts.size()].x
                             : std::uniform_real_distribution<double>(-50, 150)(rng);
      const auto a = idx.query(q);
      EXPECT_EQ(a.size, oracle::oracle_scsi(pts, q).length);
      EXPECT_TRUE(verify_answer(a, pts, {q, 0}));
    }
  }
}
