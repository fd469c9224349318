#pragma once

// Per-element scalar arithmetic shared by every backend (vector variants use
// it for loop tails). The anonymous namespace keeps each translation unit's
// copy private, since units are compiled with different target flags.

#include <algorithm>

#include "clrrt/geometry.hpp"

namespace clrrt::simd::detail {
namespace {

inline double dist2(double x1, double x2, Point2 q) {
  const double d1 = x1 - q.x1;
  const double d2 = x2 - q.x2;
  return d1 * d1 + d2 * d2;
}

inline bool strictly_inside(double x1, double x2, const Box& box) {
  return x1 > box.min.x1 && x1 < box.max.x1 && x2 > box.min.x2 && x2 < box.max.x2;
}

inline double segment_circle_dist2(double ax, double ay, double bx, double by, Point2 c) {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  const double wx = c.x1 - ax;
  const double wy = c.x2 - ay;
  const double proj = wx * dx + wy * dy;
  double t = len2 > 0.0 ? proj / len2 : 0.0;
  t = t < 0.0 ? 0.0 : t;
  t = t > 1.0 ? 1.0 : t;
  const double ex = ax + t * dx - c.x1;
  const double ey = ay + t * dy - c.x2;
  return ex * ex + ey * ey;
}

inline bool segment_touches_polygon(double ax, double ay, double bx, double by,
                                    const PolygonAxes& polygon) {
  const std::size_t edges = polygon.normal_x1.size();
  for (std::size_t k = 0; k < edges; ++k) {
    const double pa = ax * polygon.normal_x1[k] + ay * polygon.normal_x2[k];
    const double pb = bx * polygon.normal_x1[k] + by * polygon.normal_x2[k];
    const double lo = pa < pb ? pa : pb;
    const double hi = pa < pb ? pb : pa;
    if (lo > polygon.axis_max[k] || hi < polygon.axis_min[k]) return false;
  }
  // The segment's own normal; zero for a degenerate segment, which never separates.
  const double mx = ay - by;
  const double my = bx - ax;
  const double sa = ax * mx + ay * my;
  const double sb = bx * mx + by * my;
  const double slo = sa < sb ? sa : sb;
  const double shi = sa < sb ? sb : sa;
  double pmin = polygon.vertex_x1[0] * mx + polygon.vertex_x2[0] * my;
  double pmax = pmin;
  for (std::size_t k = 1; k < polygon.vertex_x1.size(); ++k) {
    const double p = polygon.vertex_x1[k] * mx + polygon.vertex_x2[k] * my;
    pmin = p < pmin ? p : pmin;
    pmax = p > pmax ? p : pmax;
  }
  return !(slo > pmax || shi < pmin);
}

}  // namespace
}  // namespace clrrt::simd::detail
