#include "clrrt/kernels.hpp"

#include "kernels_common.hpp"

namespace clrrt::simd::scalar {
namespace {

NearestHit nearest(const double* x1, const double* x2, std::size_t n, Point2 q) {
  NearestHit best{0, detail::dist2(x1[0], x2[0], q)};
  for (std::size_t i = 1; i < n; ++i) {
    const double d2 = detail::dist2(x1[i], x2[i], q);
    if (d2 < best.dist2) best = {i, d2};
  }
  return best;
}

void within_radius(const double* x1, const double* x2, std::size_t n, Point2 q,
                   double radius2, std::uint32_t offset, std::vector<std::uint32_t>& out) {
  for (std::size_t i = 0; i < n; ++i) {
    if (detail::dist2(x1[i], x2[i], q) <= radius2) {
      out.push_back(offset + static_cast<std::uint32_t>(i));
    }
  }
}

bool all_inside_box(const double* x1, const double* x2, std::size_t n, const Box& box) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!detail::strictly_inside(x1[i], x2[i], box)) return false;
  }
  return true;
}

bool polyline_hits_circle(PolylineView polyline, const Circle& circle) {
  const std::size_t n = polyline.size();
  if (n == 0) return false;
  const double r2 = circle.radius * circle.radius;
  if (n == 1) {
    return detail::segment_circle_dist2(polyline.x1[0], polyline.x2[0], polyline.x1[0],
                                        polyline.x2[0], circle.center) <= r2;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (detail::segment_circle_dist2(polyline.x1[i], polyline.x2[i], polyline.x1[i + 1],
                                     polyline.x2[i + 1], circle.center) <= r2) {
      return true;
    }
  }
  return false;
}

bool polyline_hits_polygon(PolylineView polyline, const PolygonAxes& polygon) {
  const std::size_t n = polyline.size();
  if (n == 0) return false;
  if (n == 1) {
    return detail::segment_touches_polygon(polyline.x1[0], polyline.x2[0], polyline.x1[0],
                                           polyline.x2[0], polygon);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (detail::segment_touches_polygon(polyline.x1[i], polyline.x2[i], polyline.x1[i + 1],
                                        polyline.x2[i + 1], polygon)) {
      return true;
    }
  }
  return false;
}

}  // namespace

const KernelTable& table() {
  static const KernelTable kTable{nearest, within_radius, all_inside_box,
                                  polyline_hits_circle, polyline_hits_polygon};
  return kTable;
}

}  // namespace clrrt::simd::scalar
