#pragma once

// Data-parallel geometry kernels with a scalar reference implementation and
// vector variants selected at runtime. Every variant performs the same
// floating-point operations in the same order per element, so results are
// bitwise identical across backends (tests/kernels_test.cpp checks this).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "clrrt/geometry.hpp"

namespace clrrt::simd {

enum class Backend { kScalar, kAvx2 };

const char* backend_name(Backend backend);
bool backend_available(Backend backend);

/// Best backend the CPU supports, unless CLRRT_SIMD=scalar is set in the environment.
Backend active_backend();

/// Overrides dispatch, e.g. to run a test against a specific variant.
/// Throws UsageError if the backend is not available on this machine.
void set_backend(Backend backend);

struct NearestHit {
  std::size_t index = 0;
  double dist2 = 0.0;
};

/// Structure-of-arrays polyline; segment i joins point i and point i + 1.
struct PolylineView {
  std::span<const double> x1;
  std::span<const double> x2;

  std::size_t size() const { return x1.size(); }
};

struct KernelTable {
  // Minimum squared distance to q over n >= 1 points; first index wins ties.
  NearestHit (*nearest)(const double* x1, const double* x2, std::size_t n, Point2 q);
  // Appends offset + i for every i with squared distance to q <= radius2, ascending.
  void (*within_radius)(const double* x1, const double* x2, std::size_t n, Point2 q,
                        double radius2, std::uint32_t offset,
                        std::vector<std::uint32_t>& out);
  // True iff every point is strictly inside the box.
  bool (*all_inside_box)(const double* x1, const double* x2, std::size_t n, const Box& box);
  // True iff any segment of the polyline touches the closed disk.
  bool (*polyline_hits_circle)(PolylineView polyline, const Circle& circle);
  // True iff any segment of the polyline touches the closed convex polygon
  // (separating-axis test; touching counts as contact).
  bool (*polyline_hits_polygon)(PolylineView polyline, const PolygonAxes& polygon);
};

/// Kernel table of one specific backend.
const KernelTable& kernels(Backend backend);

/// Kernel table of the active backend.
const KernelTable& kernels();

namespace scalar {
const KernelTable& table();
}  // namespace scalar

#if defined(CLRRT_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}  // namespace avx2
#endif

}  // namespace clrrt::simd
