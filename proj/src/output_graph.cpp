#include "clrrt/output_graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clrrt/kernels.hpp"

namespace clrrt {

SpatialGrid::SpatialGrid(Box bounds, double cell_size) : bounds_(bounds), cell_size_(cell_size) {
  if (!(cell_size > 0.0)) throw UsageError("spatial grid cell size must be > 0");
  columns_ = std::max(1, static_cast<int>(std::ceil(bounds.width() / cell_size)));
  rows_ = std::max(1, static_cast<int>(std::ceil(bounds.height() / cell_size)));
  cells_.resize(static_cast<std::size_t>(columns_) * static_cast<std::size_t>(rows_));
}

int SpatialGrid::column(double x1) const {
  const double c = std::floor((x1 - bounds_.min.x1) / cell_size_);
  return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(columns_ - 1)));
}

int SpatialGrid::row(double x2) const {
  const double r = std::floor((x2 - bounds_.min.x2) / cell_size_);
  return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(rows_ - 1)));
}

void SpatialGrid::insert(NodeId id, Point2 p) {
  Cell& c = cells_[static_cast<std::size_t>(row(p.x2) * columns_ + column(p.x1))];
  c.x1.push_back(p.x1);
  c.x2.push_back(p.x2);
  c.ids.push_back(id);
  ++size_;
}

std::optional<NodeId> SpatialGrid::nearest(Point2 q) const {
  if (size_ == 0) return std::nullopt;
  const simd::KernelTable& k = simd::kernels();
  const int qc = column(q.x1);
  const int qr = row(q.x2);
  // Distance from q to the outside of the cell block around (qc, qr); q may lie
  // outside the bounds, in which case its clamped cell is used.
  const double lo1 = q.x1 - (bounds_.min.x1 + qc * cell_size_);
  const double hi1 = bounds_.min.x1 + (qc + 1) * cell_size_ - q.x1;
  const double lo2 = q.x2 - (bounds_.min.x2 + qr * cell_size_);
  const double hi2 = bounds_.min.x2 + (qr + 1) * cell_size_ - q.x2;
  const double inner_margin = std::max(0.0, std::min({lo1, hi1, lo2, hi2}));

  bool found = false;
  NodeId best_id;
  double best_d2 = 0.0;
  const int max_ring = std::max(columns_, rows_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    for (int r = qr - ring; r <= qr + ring; ++r) {
      if (r < 0 || r >= rows_) continue;
      const bool edge_row = (r == qr - ring || r == qr + ring);
      const int step = edge_row ? 1 : 2 * ring;
      for (int c = qc - ring; c <= qc + ring; c += std::max(step, 1)) {
        if (c < 0 || c >= columns_) continue;
        const Cell& cell = this->cell(c, r);
        if (cell.ids.empty()) continue;
        const simd::NearestHit hit = k.nearest(cell.x1.data(), cell.x2.data(), cell.ids.size(), q);
        const NodeId id = cell.ids[hit.index];
        if (!found || hit.dist2 < best_d2 || (hit.dist2 == best_d2 && id < best_id)) {
          found = true;
          best_id = id;
          best_d2 = hit.dist2;
        }
      }
    }
    // Every point outside rings 0..ring is farther than this bound.
    const double reach = inner_margin + ring * cell_size_;
    if (found && best_d2 < reach * reach) break;
  }
  return best_id;
}

std::vector<NodeId> SpatialGrid::within(Point2 q, double radius) const {
  std::vector<NodeId> result;
  if (size_ == 0 || !(radius >= 0.0)) return result;
  const simd::KernelTable& k = simd::kernels();
  const int c0 = column(q.x1 - radius);
  const int c1 = column(q.x1 + radius);
  const int r0 = row(q.x2 - radius);
  const int r1 = row(q.x2 + radius);
  std::vector<std::uint32_t> hits;
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      const Cell& cell = this->cell(c, r);
      if (cell.ids.empty()) continue;
      hits.clear();
      k.within_radius(cell.x1.data(), cell.x2.data(), cell.ids.size(), q, radius * radius, 0,
                      hits);
      for (std::uint32_t i : hits) result.push_back(cell.ids[i]);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

OutputGraph::OutputGraph(Box bounds, double index_cell_size) : index_(bounds, index_cell_size) {}

void OutputGraph::insert(OutputNode node, std::vector<OutputEdge> edges) {
  if (node.id != next_node_id()) {
    throw UsageError(node.id < next_node_id() ? "duplicate output node id " + std::to_string(node.id.value)
                                              : "non-contiguous output node id " + std::to_string(node.id.value));
  }
  if (!is_finite(node.y)) throw UsageError("output node position is not finite");
  const auto position = [&](NodeId id) -> Point2 {
    return id == node.id ? node.y : nodes_.at(id.index()).y;
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const OutputEdge& e = edges[i];
    if (e.id.index() != edges_.size() + i) {
      throw UsageError("output edge id " + std::to_string(e.id.value) + " is not the next free id");
    }
    if (e.tail > node.id || e.head > node.id) throw UsageError("output edge endpoint does not exist");
    if (e.tail == e.head) throw UsageError("output edge is a self loop");
    if (e.reference.front() != position(e.tail) || e.reference.back() != position(e.head)) {
      throw UsageError("output edge reference does not join its endpoints");
    }
  }

  index_.insert(node.id, node.y);
  nodes_.push_back(std::move(node));
  outgoing_.emplace_back();
  incoming_.emplace_back();
  for (OutputEdge& e : edges) {
    outgoing_[e.tail.index()].push_back(e.id);
    incoming_[e.head.index()].push_back(e.id);
    edges_.push_back(std::move(e));
  }
}

NodeId OutputGraph::nearest(Point2 y) const {
  const auto id = index_.nearest(y);
  if (!id) throw UsageError("nearest() on an empty output graph");
  return *id;
}

std::vector<NodeId> OutputGraph::near(Point2 y, double radius) const {
  return index_.within(y, radius);
}

double near_radius(std::size_t n, double gamma, double eta) {
  if (n <= 1) return eta;
  const double nd = static_cast<double>(n);
  return std::min(gamma * std::sqrt(std::log(nd) / nd), eta);
}

Point2 steer(Point2 from, Point2 to, double eta) {
  const Point2 d = to - from;
  const double len = norm(d);
  if (len <= eta) return to;
  return from + (eta / len) * d;
}

}  // namespace clrrt
