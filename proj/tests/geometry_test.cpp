#include <gtest/gtest.h>

#include <random>

#include "clrrt/geometry.hpp"
#include "clrrt/kernels.hpp"
#include "support.hpp"

namespace clrrt {
namespace {

const Box kBox{{-10, -10}, {10, 10}};
const GoalRegion kGoal{{8, 8}, 1};

Workspace with(std::vector<Obstacle> obstacles) { return Workspace(kBox, std::move(obstacles), kGoal); }

TEST(PointInFree, Examples) {
  EXPECT_TRUE(with({}).point_in_free({0, 0}));
  EXPECT_FALSE(with({Circle{{0, 0}, 1}}).point_in_free({0, 0}));
  EXPECT_FALSE(with({}).point_in_free({11, 0}));
}

TEST(PointInFree, BoundariesAreInCollision) {
  const Workspace ws = with({Circle{{0, 0}, 1}, ConvexPolygon{{{2, 2}, {4, 2}, {4, 4}, {2, 4}}}});
  EXPECT_FALSE(ws.point_in_free({1, 0}));
  EXPECT_FALSE(ws.point_in_free({3, 2}));
  EXPECT_FALSE(ws.point_in_free({4, 4}));
  EXPECT_FALSE(ws.point_in_free({10, 0}));
  EXPECT_TRUE(ws.point_in_free({1.0000001, 0}));
}

TEST(SegmentCollisionFree, Examples) {
  EXPECT_TRUE(with({}).segment_collision_free({0, 0}, {1, 0}));
  EXPECT_FALSE(with({Circle{{0.5, 0}, 0.25}}).segment_collision_free({0, 0}, {1, 0}));
  EXPECT_TRUE(with({Circle{{0.5, 1.0}, 0.25}}).segment_collision_free({0, 0}, {1, 0}));
}

TEST(SegmentCollisionFree, PassesBetweenNotThrough) {
  const Workspace ws = with({ConvexPolygon{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}}});
  EXPECT_FALSE(ws.segment_collision_free({-5, 0}, {5, 0}));
  EXPECT_FALSE(ws.segment_collision_free({-5, 1}, {5, 1}));  // grazes an edge
  EXPECT_TRUE(ws.segment_collision_free({-5, 1.001}, {5, 1.001}));
  EXPECT_FALSE(ws.segment_collision_free({-3, 1}, {1, -3}));  // touches the corner (-1, -1)
  EXPECT_TRUE(ws.segment_collision_free({-3, 1}, {-1, 3}));
}

TEST(SegmentCollisionFree, MatchesIntersectionOracleOnRandomSegments) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-9.9, 9.9);
  const Workspace ws = with({Circle{{-4, 3}, 1.5}, Circle{{5, -5}, 0.7},
                             ConvexPolygon{{{0, 0}, {3, -1}, {4, 2}, {1, 3}}},
                             ConvexPolygon{{{-6, -6}, {-3, -7}, {-4, -3}}}});
  int blocked = 0;
  for (int i = 0; i < 20000; ++i) {
    const Point2 a{u(rng), u(rng)};
    const Point2 b{u(rng), u(rng)};
    const bool expected = testing::oracle_segment_free(ws, a, b);
    ASSERT_EQ(ws.segment_collision_free(a, b), expected) << a.x1 << "," << a.x2 << " " << b.x1
                                                         << "," << b.x2;
    blocked += expected ? 0 : 1;
  }
  EXPECT_GT(blocked, 2000);
  EXPECT_LT(blocked, 18000);
}

TEST(SegmentCollisionFree, SymmetricAndBackendIndependent) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-9.9, 9.9);
  const Workspace ws = with({Circle{{1, 1}, 2}, ConvexPolygon{{{-5, -5}, {-2, -5}, {-3, -2}}}});
  const simd::Backend before = simd::active_backend();
  for (int i = 0; i < 5000; ++i) {
    const Point2 a{u(rng), u(rng)};
    const Point2 b{u(rng), u(rng)};
    simd::set_backend(simd::Backend::kScalar);
    const bool scalar = ws.segment_collision_free(a, b);
    EXPECT_EQ(scalar, ws.segment_collision_free(b, a));
    simd::set_backend(before);
    EXPECT_EQ(scalar, ws.segment_collision_free(a, b));
  }
}

TEST(Heuristic, Examples) {
  const Workspace ws(kBox, {}, GoalRegion{{0, 0}, 1});
  EXPECT_EQ(ws.heuristic({0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(ws.heuristic({3, 0}), 2.0);
  EXPECT_EQ(ws.heuristic({0.5, 0.5}), 0.0);
}

TEST(InGoal, BoundaryInclusive) {
  const Workspace ws(kBox, {}, GoalRegion{{0, 0}, 1});
  EXPECT_TRUE(ws.in_goal({0, 0}));
  EXPECT_TRUE(ws.in_goal({1, 0}));
  EXPECT_TRUE(ws.in_goal({0, -1}));
  EXPECT_FALSE(ws.in_goal({1 + 1e-12, 0}));
}

TEST(Workspace, RejectsInvalidConfiguration) {
  EXPECT_THROW(Workspace(Box{{0, 0}, {0, 1}}, {}, kGoal), ConfigError);
  EXPECT_THROW(with({Circle{{0, 0}, 0}}), ConfigError);
  EXPECT_THROW(with({ConvexPolygon{{{0, 0}, {1, 0}}}}), ConfigError);
  // Clockwise.
  EXPECT_THROW(with({ConvexPolygon{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}}}), ConfigError);
  // Collinear vertex is not strictly convex.
  EXPECT_THROW(with({ConvexPolygon{{{0, 0}, {1, 0}, {2, 0}, {1, 1}}}}), ConfigError);
  // Pentagram winds twice.
  std::vector<Point2> star;
  for (int k = 0; k < 5; ++k) {
    const double a = 2 * 3.141592653589793 * (2 * k) / 5;
    star.push_back({std::cos(a), std::sin(a)});
  }
  EXPECT_THROW(with({ConvexPolygon{star}}), ConfigError);
  // Goal disk swallowed by an obstacle.
  EXPECT_THROW(Workspace(kBox, {Circle{{8, 8}, 1.5}}, kGoal), ConfigError);
  EXPECT_THROW(Workspace(kBox, {}, GoalRegion{{0, 0}, -1}), ConfigError);
}

TEST(Workspace, GoalDiskPartiallyBlockedIsAccepted) {
  EXPECT_NO_THROW(Workspace(kBox, {Circle{{8, 8}, 0.8}}, kGoal));
}

}  // namespace
}  // namespace clrrt
