#pragma once

// Independent reference computations used as test oracles.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <vector>

#include "clrrt/planner.hpp"
#include "clrrt/runner.hpp"
#include "clrrt/scenario.hpp"

namespace clrrt::testing {

inline double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

inline bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x1, b.x1) <= p.x1 && p.x1 <= std::max(a.x1, b.x1) &&
         std::min(a.x2, b.x2) <= p.x2 && p.x2 <= std::max(a.x2, b.x2);
}

/// Closed segments [a,b] and [c,d] share a point.
inline bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return true;
  }
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

/// p inside or on the counter-clockwise convex polygon.
inline bool in_closed_polygon(const ConvexPolygon& polygon, Point2 p) {
  const auto& v = polygon.vertices;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (orient(v[k], v[(k + 1) % v.size()], p) < 0) return false;
  }
  return true;
}

/// Segment-edge intersection plus containment, the textbook route.
inline bool segment_hits_polygon(Point2 a, Point2 b, const ConvexPolygon& polygon) {
  if (in_closed_polygon(polygon, a) || in_closed_polygon(polygon, b)) return true;
  const auto& v = polygon.vertices;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (segments_intersect(a, b, v[k], v[(k + 1) % v.size()])) return true;
  }
  return false;
}

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = squared_norm(d);
  double t = len2 > 0 ? dot(p - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * d);
}

/// Reference implementation of segment_collision_free.
inline bool oracle_segment_free(const Workspace& ws, Point2 a, Point2 b) {
  const Box& box = ws.bounds();
  for (Point2 p : {a, b}) {
    if (!(p.x1 > box.min.x1 && p.x1 < box.max.x1 && p.x2 > box.min.x2 && p.x2 < box.max.x2)) {
      return false;
    }
  }
  for (const Obstacle& o : ws.obstacles()) {
    if (const auto* c = std::get_if<Circle>(&o)) {
      if (point_segment_distance(c->center, a, b) <= c->radius) return false;
    } else if (segment_hits_polygon(a, b, std::get<ConvexPolygon>(o))) {
      return false;
    }
  }
  return true;
}

/// Segment passes through the open interior of a convex polygon (Cyrus-Beck clip).
inline bool crosses_interior(Point2 a, Point2 b, const ConvexPolygon& polygon) {
  double lo = 0.0;
  double hi = 1.0;
  const auto& v = polygon.vertices;
  const Point2 d = b - a;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Point2 e = v[(k + 1) % v.size()] - v[k];
    // Inside means cross(e, p - v[k]) > 0.
    const double num = cross(e, a - v[k]);
    const double den = cross(e, d);
    if (den == 0.0) {
      if (num <= 0.0) return false;
      continue;
    }
    const double t = -num / den;
    if (den > 0.0) {
      lo = std::max(lo, t);
    } else {
      hi = std::min(hi, t);
    }
  }
  return hi - lo > 1e-12;
}

/// Shortest obstacle-avoiding distance from `from` to `to` among convex
/// polygon obstacles, by Dijkstra over the visibility graph of their vertices.
inline double geodesic_distance(const std::vector<Obstacle>& obstacles, Point2 from, Point2 to) {
  std::vector<Point2> points{from, to};
  std::vector<ConvexPolygon> polygons;
  for (const Obstacle& o : obstacles) {
    if (const auto* p = std::get_if<ConvexPolygon>(&o)) {
      polygons.push_back(*p);
      points.insert(points.end(), p->vertices.begin(), p->vertices.end());
    }
  }
  const auto visible = [&](Point2 a, Point2 b) {
    for (const ConvexPolygon& p : polygons) {
      if (crosses_interior(a, b, p)) return false;
    }
    return true;
  };
  std::vector<double> dist(points.size(), std::numeric_limits<double>::infinity());
  std::vector<bool> done(points.size(), false);
  dist[0] = 0.0;
  for (std::size_t round = 0; round < points.size(); ++round) {
    std::size_t u = points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!done[i] && (u == points.size() || dist[i] < dist[u])) u = i;
    }
    if (u == points.size() || !std::isfinite(dist[u])) break;
    done[u] = true;
    for (std::size_t w = 0; w < points.size(); ++w) {
      if (!done[w] && visible(points[u], points[w])) {
        dist[w] = std::min(dist[w], dist[u] + distance(points[u], points[w]));
      }
    }
  }
  return dist[1];
}

/// Shortest-path cost-to-come per output node computed from scratch over the
/// trajectory graph: every edge cost is recomputed from regenerated samples,
/// and an output node's value is the cheapest trajectory node realizing it.
inline std::vector<double> dijkstra_over_trajectories(const Planner& planner) {
  const TrajectoryGraph& tg = planner.trajectory_graph();
  const std::size_t n = tg.node_count();
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency(n);
  for (const TrajectoryEdge& e : tg.edges()) {
    adjacency[e.tail.index()].emplace_back(e.head.index(),
                                           trajectory_cost(planner.trajectory(e.head)));
  }
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[0] = 0.0;
  heap.emplace(0.0, 0);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& [w, c] : adjacency[u]) {
      if (d + c < dist[w]) {
        dist[w] = d + c;
        heap.emplace(dist[w], w);
      }
    }
  }
  std::vector<double> best(planner.output_graph().node_count(),
                           std::numeric_limits<double>::infinity());
  for (const TrajectoryNode& t : tg.nodes()) {
    double& b = best[t.output_node.index()];
    b = std::min(b, dist[t.id.index()]);
  }
  return best;
}

/// Open square workspace with an optional set of circles, goal in a corner.
inline Workspace open_workspace(double half = 20.0, std::vector<Obstacle> obstacles = {}) {
  return Workspace(Box{{-half, -half}, {half, half}}, std::move(obstacles),
                   GoalRegion{{half - 3.0, half - 3.0}, 2.0});
}

inline PlanningProblem open_problem(double half = 20.0, bool use_heuristic = true) {
  PlanningProblem problem{open_workspace(half), State{-half + 3.0, -half + 3.0, 0.0, 0.0}, {},
                          {}, {}};
  problem.params.use_heuristic = use_heuristic;
  return problem;
}

/// Per-stage cost band shared by the point-to-point and sequential checks:
/// [straight-line distance to the goal disk, 1.5 x geodesic distance to it].
struct CostBand {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double cost) const { return cost >= lower && cost <= upper; }
};

inline CostBand cost_band(const Scenario& s) {
  const Point2 start = output_map(s.x_init);
  const double straight = distance(start, s.goal.center) - s.goal.radius;
  const double geodesic = geodesic_distance(s.obstacles, start, s.goal.center) - s.goal.radius;
  return {straight, 1.5 * geodesic};
}

}  // namespace clrrt::testing
