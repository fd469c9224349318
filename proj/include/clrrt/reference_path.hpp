#pragma once

#include <vector>

#include "clrrt/geometry.hpp"

namespace clrrt {

/// Polyline reference in output space, parameterized by arc length.
class ReferencePath {
 public:
  /// Throws ConfigError on an empty list, non-finite points, or repeated
  /// consecutive waypoints (a single waypoint is allowed).
  explicit ReferencePath(std::vector<Point2> waypoints);

  static ReferencePath segment(Point2 from, Point2 to) { return ReferencePath({from, to}); }

  const std::vector<Point2>& waypoints() const { return waypoints_; }
  Point2 front() const { return waypoints_.front(); }
  Point2 back() const { return waypoints_.back(); }
  double length() const { return cumulative_.back(); }

  /// Point at arc length s, clamped to [0, length()].
  Point2 point_at(double s) const;

  /// Arc length of the point of the path closest to p among points with arc
  /// length >= from. Ties resolve to the smaller arc length.
  double closest_arclength(Point2 p, double from) const;

 private:
  std::vector<Point2> waypoints_;
  std::vector<double> cumulative_;
};

}  // namespace clrrt
