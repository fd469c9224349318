// AVX2 variants. Compiled with -mavx2 only (no FMA) so each lane rounds exactly
// like the scalar reference.

#include <immintrin.h>

#include <limits>

#include "clrrt/kernels.hpp"
#include "kernels_common.hpp"

namespace clrrt::simd::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d dist2(__m256d x1, __m256d x2, __m256d q1, __m256d q2) {
  const __m256d d1 = _mm256_sub_pd(x1, q1);
  const __m256d d2 = _mm256_sub_pd(x2, q2);
  return _mm256_add_pd(_mm256_mul_pd(d1, d1), _mm256_mul_pd(d2, d2));
}

// a < b ? a : b, lane-wise, with the same tie/zero behaviour as the scalar ternary.
inline __m256d select_lt(__m256d a, __m256d b) {
  return _mm256_blendv_pd(b, a, _mm256_cmp_pd(a, b, _CMP_LT_OQ));
}

inline __m256d select_gt(__m256d a, __m256d b) {
  return _mm256_blendv_pd(b, a, _mm256_cmp_pd(a, b, _CMP_GT_OQ));
}

NearestHit nearest(const double* x1, const double* x2, std::size_t n, Point2 q) {
  if (n < kLanes) return scalar::table().nearest(x1, x2, n, q);

  const __m256d q1 = _mm256_set1_pd(q.x1);
  const __m256d q2 = _mm256_set1_pd(q.x2);
  const __m256d step = _mm256_set1_pd(static_cast<double>(kLanes));
  __m256d index = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d best_d = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d best_i = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d d = dist2(_mm256_loadu_pd(x1 + i), _mm256_loadu_pd(x2 + i), q1, q2);
    const __m256d better = _mm256_cmp_pd(d, best_d, _CMP_LT_OQ);
    best_d = _mm256_blendv_pd(best_d, d, better);
    best_i = _mm256_blendv_pd(best_i, index, better);
    index = _mm256_add_pd(index, step);
  }

  alignas(32) double lane_d[kLanes];
  alignas(32) double lane_i[kLanes];
  _mm256_store_pd(lane_d, best_d);
  _mm256_store_pd(lane_i, best_i);
  NearestHit best{static_cast<std::size_t>(lane_i[0]), lane_d[0]};
  for (std::size_t l = 1; l < kLanes; ++l) {
    const auto li = static_cast<std::size_t>(lane_i[l]);
    if (lane_d[l] < best.dist2 || (lane_d[l] == best.dist2 && li < best.index)) {
      best = {li, lane_d[l]};
    }
  }
  for (; i < n; ++i) {
    const double d = detail::dist2(x1[i], x2[i], q);
    if (d < best.dist2) best = {i, d};
  }
  return best;
}

void within_radius(const double* x1, const double* x2, std::size_t n, Point2 q,
                   double radius2, std::uint32_t offset, std::vector<std::uint32_t>& out) {
  const __m256d q1 = _mm256_set1_pd(q.x1);
  const __m256d q2 = _mm256_set1_pd(q.x2);
  const __m256d r2 = _mm256_set1_pd(radius2);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d d = dist2(_mm256_loadu_pd(x1 + i), _mm256_loadu_pd(x2 + i), q1, q2);
    int mask = _mm256_movemask_pd(_mm256_cmp_pd(d, r2, _CMP_LE_OQ));
    while (mask != 0) {
      const int lane = __builtin_ctz(static_cast<unsigned>(mask));
      out.push_back(offset + static_cast<std::uint32_t>(i + static_cast<std::size_t>(lane)));
      mask &= mask - 1;
    }
  }
  for (; i < n; ++i) {
    if (detail::dist2(x1[i], x2[i], q) <= radius2) {
      out.push_back(offset + static_cast<std::uint32_t>(i));
    }
  }
}

bool all_inside_box(const double* x1, const double* x2, std::size_t n, const Box& box) {
  const __m256d lo1 = _mm256_set1_pd(box.min.x1);
  const __m256d lo2 = _mm256_set1_pd(box.min.x2);
  const __m256d hi1 = _mm256_set1_pd(box.max.x1);
  const __m256d hi2 = _mm256_set1_pd(box.max.x2);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a = _mm256_loadu_pd(x1 + i);
    const __m256d b = _mm256_loadu_pd(x2 + i);
    const __m256d inside = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(a, lo1, _CMP_GT_OQ), _mm256_cmp_pd(a, hi1, _CMP_LT_OQ)),
        _mm256_and_pd(_mm256_cmp_pd(b, lo2, _CMP_GT_OQ), _mm256_cmp_pd(b, hi2, _CMP_LT_OQ)));
    if (_mm256_movemask_pd(inside) != 0xF) return false;
  }
  for (; i < n; ++i) {
    if (!detail::strictly_inside(x1[i], x2[i], box)) return false;
  }
  return true;
}

bool polyline_hits_circle(PolylineView polyline, const Circle& circle) {
  const std::size_t n = polyline.size();
  if (n < kLanes + 1) return scalar::table().polyline_hits_circle(polyline, circle);

  const double* x1 = polyline.x1.data();
  const double* x2 = polyline.x2.data();
  const __m256d c1 = _mm256_set1_pd(circle.center.x1);
  const __m256d c2 = _mm256_set1_pd(circle.center.x2);
  const __m256d r2 = _mm256_set1_pd(circle.radius * circle.radius);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);

  std::size_t i = 0;
  for (; i + kLanes < n; i += kLanes) {
    const __m256d ax = _mm256_loadu_pd(x1 + i);
    const __m256d ay = _mm256_loadu_pd(x2 + i);
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x1 + i + 1), ax);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(x2 + i + 1), ay);
    const __m256d len2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d wx = _mm256_sub_pd(c1, ax);
    const __m256d wy = _mm256_sub_pd(c2, ay);
    const __m256d proj = _mm256_add_pd(_mm256_mul_pd(wx, dx), _mm256_mul_pd(wy, dy));
    __m256d t = _mm256_and_pd(_mm256_div_pd(proj, len2), _mm256_cmp_pd(len2, zero, _CMP_GT_OQ));
    t = _mm256_blendv_pd(t, zero, _mm256_cmp_pd(t, zero, _CMP_LT_OQ));
    t = _mm256_blendv_pd(t, one, _mm256_cmp_pd(t, one, _CMP_GT_OQ));
    const __m256d ex = _mm256_sub_pd(_mm256_add_pd(ax, _mm256_mul_pd(t, dx)), c1);
    const __m256d ey = _mm256_sub_pd(_mm256_add_pd(ay, _mm256_mul_pd(t, dy)), c2);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
    if (_mm256_movemask_pd(_mm256_cmp_pd(d2, r2, _CMP_LE_OQ)) != 0) return true;
  }
  for (; i + 1 < n; ++i) {
    if (detail::segment_circle_dist2(x1[i], x2[i], x1[i + 1], x2[i + 1], circle.center) <=
        circle.radius * circle.radius) {
      return true;
    }
  }
  return false;
}

bool polyline_hits_polygon(PolylineView polyline, const PolygonAxes& polygon) {
  const std::size_t n = polyline.size();
  if (n < kLanes + 1) return scalar::table().polyline_hits_polygon(polyline, polygon);

  const double* x1 = polyline.x1.data();
  const double* x2 = polyline.x2.data();
  const std::size_t edges = polygon.normal_x1.size();
  const std::size_t vertices = polygon.vertex_x1.size();

  std::size_t i = 0;
  for (; i + kLanes < n; i += kLanes) {
    const __m256d ax = _mm256_loadu_pd(x1 + i);
    const __m256d ay = _mm256_loadu_pd(x2 + i);
    const __m256d bx = _mm256_loadu_pd(x1 + i + 1);
    const __m256d by = _mm256_loadu_pd(x2 + i + 1);
    __m256d separated = _mm256_setzero_pd();
    for (std::size_t k = 0; k < edges; ++k) {
      const __m256d n1 = _mm256_set1_pd(polygon.normal_x1[k]);
      const __m256d n2 = _mm256_set1_pd(polygon.normal_x2[k]);
      const __m256d pa = _mm256_add_pd(_mm256_mul_pd(ax, n1), _mm256_mul_pd(ay, n2));
      const __m256d pb = _mm256_add_pd(_mm256_mul_pd(bx, n1), _mm256_mul_pd(by, n2));
      const __m256d lo = select_lt(pa, pb);
      const __m256d hi = _mm256_blendv_pd(pa, pb, _mm256_cmp_pd(pa, pb, _CMP_LT_OQ));
      separated = _mm256_or_pd(
          separated,
          _mm256_or_pd(_mm256_cmp_pd(lo, _mm256_set1_pd(polygon.axis_max[k]), _CMP_GT_OQ),
                       _mm256_cmp_pd(hi, _mm256_set1_pd(polygon.axis_min[k]), _CMP_LT_OQ)));
    }
    const __m256d mx = _mm256_sub_pd(ay, by);
    const __m256d my = _mm256_sub_pd(bx, ax);
    const __m256d sa = _mm256_add_pd(_mm256_mul_pd(ax, mx), _mm256_mul_pd(ay, my));
    const __m256d sb = _mm256_add_pd(_mm256_mul_pd(bx, mx), _mm256_mul_pd(by, my));
    const __m256d slo = select_lt(sa, sb);
    const __m256d shi = _mm256_blendv_pd(sa, sb, _mm256_cmp_pd(sa, sb, _CMP_LT_OQ));
    __m256d pmin = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(polygon.vertex_x1[0]), mx),
                                 _mm256_mul_pd(_mm256_set1_pd(polygon.vertex_x2[0]), my));
    __m256d pmax = pmin;
    for (std::size_t k = 1; k < vertices; ++k) {
      const __m256d p =
          _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(polygon.vertex_x1[k]), mx),
                        _mm256_mul_pd(_mm256_set1_pd(polygon.vertex_x2[k]), my));
      pmin = select_lt(p, pmin);
      pmax = select_gt(p, pmax);
    }
    separated = _mm256_or_pd(separated, _mm256_or_pd(_mm256_cmp_pd(slo, pmax, _CMP_GT_OQ),
                                                     _mm256_cmp_pd(shi, pmin, _CMP_LT_OQ)));
    if (_mm256_movemask_pd(separated) != 0xF) return true;
  }
  for (; i + 1 < n; ++i) {
    if (detail::segment_touches_polygon(x1[i], x2[i], x1[i + 1], x2[i + 1], polygon)) {
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

}  // namespace clrrt::simd::avx2
