#include "clrrt/geometry.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <utility>

#include "clrrt/kernels.hpp"

namespace clrrt {

PolygonAxes make_polygon_axes(const ConvexPolygon& polygon) {
  PolygonAxes axes;
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 edge = v[(k + 1) % n] - v[k];
    const Point2 normal{edge.x2, -edge.x1};
    double lo = dot(normal, v[0]);
    double hi = lo;
    for (const Point2& p : v) {
      lo = std::min(lo, dot(normal, p));
      hi = std::max(hi, dot(normal, p));
    }
    axes.normal_x1.push_back(normal.x1);
    axes.normal_x2.push_back(normal.x2);
    axes.axis_min.push_back(lo);
    axes.axis_max.push_back(hi);
  }
  for (const Point2& p : v) {
    axes.vertex_x1.push_back(p.x1);
    axes.vertex_x2.push_back(p.x2);
  }
  return axes;
}

void validate_obstacle(const Obstacle& obstacle) {
  if (const auto* circle = std::get_if<Circle>(&obstacle)) {
    if (!is_finite(circle->center) || !(circle->radius > 0.0) || !std::isfinite(circle->radius)) {
      throw ConfigError("circle obstacle needs a finite center and radius > 0");
    }
    return;
  }
  const auto& v = std::get<ConvexPolygon>(obstacle).vertices;
  if (v.size() < 3) throw ConfigError("polygon obstacle needs at least 3 vertices");
  double turning = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!is_finite(v[k])) throw ConfigError("polygon vertex is not finite");
    const Point2 e0 = v[(k + 1) % v.size()] - v[k];
    const Point2 e1 = v[(k + 2) % v.size()] - v[(k + 1) % v.size()];
    if (!(cross(e0, e1) > 0.0)) {
      throw ConfigError("polygon must be strictly convex and counter-clockwise");
    }
    turning += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  // A self-intersecting star also turns left everywhere but winds more than once.
  if (turning > 2.0 * std::numbers::pi + 1e-9) {
    throw ConfigError("polygon must be simple (winds more than once)");
  }
}

Workspace::Workspace(Box bounds, std::vector<Obstacle> obstacles, GoalRegion goal)
    : bounds_(bounds), obstacles_(std::move(obstacles)), goal_(goal) {
  if (!is_finite(bounds_.min) || !is_finite(bounds_.max) || !(bounds_.width() > 0.0) ||
      !(bounds_.height() > 0.0)) {
    throw ConfigError("workspace bounds must be finite and non-degenerate");
  }
  for (const Obstacle& obstacle : obstacles_) {
    validate_obstacle(obstacle);
    if (const auto* circle = std::get_if<Circle>(&obstacle)) {
      circles_.push_back(*circle);
    } else {
      polygons_.push_back(make_polygon_axes(std::get<ConvexPolygon>(obstacle)));
    }
  }
  if (!is_finite(goal_.center) || !(goal_.radius > 0.0) || !std::isfinite(goal_.radius)) {
    throw ConfigError("goal region needs a finite center and radius > 0");
  }

  // Probe the goal disk for a free point: center plus two rings.
  bool reachable = point_in_free(goal_.center);
  constexpr int kProbes = 32;
  for (double scale : {0.5, 0.999}) {
    for (int k = 0; k < kProbes && !reachable; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / kProbes;
      reachable = point_in_free(goal_.center + Point2{scale * goal_.radius * std::cos(angle),
                                                      scale * goal_.radius * std::sin(angle)});
    }
  }
  if (!reachable) throw ConfigError("goal region does not intersect free space");
}

Workspace Workspace::with_goal(GoalRegion goal) const {
  return Workspace(bounds_, obstacles_, goal);
}

bool Workspace::point_in_free(Point2 p) const {
  return polyline_collision_free(std::span<const double>(&p.x1, 1),
                                 std::span<const double>(&p.x2, 1));
}

bool Workspace::segment_collision_free(Point2 a, Point2 b) const {
  // Fixed endpoint order keeps the answer symmetric under rounding.
  if (b.x1 < a.x1 || (b.x1 == a.x1 && b.x2 < a.x2)) std::swap(a, b);
  const std::array<double, 2> x1{a.x1, b.x1};
  const std::array<double, 2> x2{a.x2, b.x2};
  return polyline_collision_free(x1, x2);
}

bool Workspace::polyline_collision_free(std::span<const double> x1,
                                        std::span<const double> x2) const {
  if (x1.size() != x2.size()) throw UsageError("polyline coordinate spans differ in length");
  if (x1.empty()) return true;
  const simd::KernelTable& k = simd::kernels();
  // The bounds are convex, so chords between interior points stay interior.
  if (!k.all_inside_box(x1.data(), x2.data(), x1.size(), bounds_)) return false;
  const simd::PolylineView polyline{x1, x2};
  for (const Circle& circle : circles_) {
    if (k.polyline_hits_circle(polyline, circle)) return false;
  }
  for (const PolygonAxes& polygon : polygons_) {
    if (k.polyline_hits_polygon(polyline, polygon)) return false;
  }
  return true;
}

double Workspace::heuristic(Point2 y) const {
  return std::max(0.0, distance(y, goal_.center) - goal_.radius);
}

bool Workspace::in_goal(Point2 y) const { return distance(y, goal_.center) <= goal_.radius; }

}  // namespace clrrt
