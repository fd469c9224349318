#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace clrrt {

/// Raised when user-supplied configuration violates a documented invariant.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on API misuse that indicates a caller bug (bad ids, broken continuity).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A point in the planar output space (vehicle position).
struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }

inline double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double cross(Point2 a, Point2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double squared_norm(Point2 a) { return a.x1 * a.x1 + a.x2 * a.x2; }
inline double norm(Point2 a) { return std::sqrt(squared_norm(a)); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x1) && std::isfinite(p.x2); }

struct Circle {
  Point2 center;
  double radius = 0.0;

  friend bool operator==(const Circle&, const Circle&) = default;
};

/// Strictly convex polygon, vertices in counter-clockwise order.
struct ConvexPolygon {
  std::vector<Point2> vertices;

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;
};

using Obstacle = std::variant<Circle, ConvexPolygon>;

/// Axis-aligned rectangle.
struct Box {
  Point2 min;
  Point2 max;

  double width() const { return max.x1 - min.x1; }
  double height() const { return max.x2 - min.x2; }

  friend bool operator==(const Box&, const Box&) = default;
};

struct GoalRegion {
  Point2 center;
  double radius = 0.0;

  friend bool operator==(const GoalRegion&, const GoalRegion&) = default;
};

/// Precomputed separating-axis data for one convex polygon, structure-of-arrays.
/// Axis k is the outward normal of edge k; [axis_min[k], axis_max[k]] is the
/// polygon's projection onto it.
struct PolygonAxes {
  std::vector<double> normal_x1;
  std::vector<double> normal_x2;
  std::vector<double> axis_min;
  std::vector<double> axis_max;
  std::vector<double> vertex_x1;
  std::vector<double> vertex_x2;
};

PolygonAxes make_polygon_axes(const ConvexPolygon& polygon);

/// Checks radius > 0 / vertex count, convexity and orientation. Throws ConfigError.
void validate_obstacle(const Obstacle& obstacle);

/// Planar workspace: open rectangular bounds minus closed obstacles, plus a goal disk.
/// Immutable after construction.
class Workspace {
 public:
  Workspace(Box bounds, std::vector<Obstacle> obstacles, GoalRegion goal);

  const Box& bounds() const { return bounds_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  const GoalRegion& goal() const { return goal_; }

  /// Same obstacles and bounds, different goal disk.
  Workspace with_goal(GoalRegion goal) const;

  /// True iff p is strictly inside the bounds and outside every (closed) obstacle.
  bool point_in_free(Point2 p) const;

  /// True iff the closed segment [a, b] lies in free space.
  bool segment_collision_free(Point2 a, Point2 b) const;

  /// True iff every chord of the polyline lies in free space. Coordinates are
  /// passed structure-of-arrays; a single point is tested for membership.
  bool polyline_collision_free(std::span<const double> x1,
                               std::span<const double> x2) const;

  /// Admissible estimate of the remaining arc length to the goal disk.
  double heuristic(Point2 y) const;

  bool in_goal(Point2 y) const;

  friend bool operator==(const Workspace& a, const Workspace& b) {
    return a.bounds_ == b.bounds_ && a.obstacles_ == b.obstacles_ && a.goal_ == b.goal_;
  }

 private:
  Box bounds_;
  std::vector<Obstacle> obstacles_;
  GoalRegion goal_;
  std::vector<Circle> circles_;
  std::vector<PolygonAxes> polygons_;
};

}  // namespace clrrt
