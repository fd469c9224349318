#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "clrrt/geometry.hpp"
#include "clrrt/ids.hpp"
#include "clrrt/reference_path.hpp"

namespace clrrt {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Vertex of the reference-space graph.
struct OutputNode {
  NodeId id;
  Point2 y;
  double g = kInfinity;      // cost-to-come
  double g_bar = kInfinity;  // one-step look-ahead cost-to-come
  double h = 0.0;            // admissible cost-to-go
  std::optional<NodeId> parent_output;
  std::optional<TrajNodeId> parent_trajectory;

  bool stationary() const { return g == g_bar; }
};

/// Straight reference segment tail.y -> head.y.
struct OutputEdge {
  EdgeId id;
  NodeId tail;
  NodeId head;
  ReferencePath reference;
};

/// Uniform bucket grid over the workspace bounds. Each cell keeps its points
/// structure-of-arrays so queries run through the SIMD distance kernels.
class SpatialGrid {
 public:
  SpatialGrid(Box bounds, double cell_size);

  void insert(NodeId id, Point2 p);
  std::size_t size() const { return size_; }

  /// Closest point; ties go to the smallest id. nullopt when empty.
  std::optional<NodeId> nearest(Point2 q) const;

  /// Ids of all points with distance <= radius, ascending.
  std::vector<NodeId> within(Point2 q, double radius) const;

 private:
  struct Cell {
    std::vector<double> x1;
    std::vector<double> x2;
    std::vector<NodeId> ids;
  };

  int column(double x1) const;
  int row(double x2) const;
  const Cell& cell(int col, int row) const { return cells_[static_cast<std::size_t>(row * columns_ + col)]; }

  Box bounds_;
  double cell_size_;
  int columns_;
  int rows_;
  std::vector<Cell> cells_;
  std::size_t size_ = 0;
};

/// Reference-space graph G_y: nodes, straight-segment edges, per-node incoming
/// and outgoing adjacency, and a spatial index over node positions.
class OutputGraph {
 public:
  OutputGraph(Box bounds, double index_cell_size);

  NodeId next_node_id() const { return NodeId::from_index(nodes_.size()); }
  EdgeId next_edge_id() const { return EdgeId::from_index(edges_.size()); }

  /// Inserts a node together with edges touching it (or other existing nodes).
  /// Ids must be the next free ones, in order. Validation happens before any
  /// mutation; violations throw UsageError and leave the graph unchanged.
  void insert(OutputNode node, std::vector<OutputEdge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  const OutputNode& node(NodeId id) const { return nodes_.at(id.index()); }
  OutputNode& node(NodeId id) { return nodes_.at(id.index()); }
  const OutputEdge& edge(EdgeId id) const { return edges_.at(id.index()); }
  const std::vector<OutputNode>& nodes() const { return nodes_; }
  const std::vector<OutputEdge>& edges() const { return edges_; }

  std::span<const EdgeId> outgoing(NodeId id) const { return outgoing_.at(id.index()); }
  std::span<const EdgeId> incoming(NodeId id) const { return incoming_.at(id.index()); }

  /// Euclidean nearest node, smallest id on ties. Throws UsageError if empty.
  NodeId nearest(Point2 y) const;

  /// All nodes within the closed ball of the given radius, ascending ids.
  std::vector<NodeId> near(Point2 y, double radius) const;

 private:
  std::vector<OutputNode> nodes_;
  std::vector<OutputEdge> edges_;
  std::vector<std::vector<EdgeId>> outgoing_;
  std::vector<std::vector<EdgeId>> incoming_;
  SpatialGrid index_;
};

/// Shrinking-ball radius min(gamma * sqrt(ln n / n), eta); eta when n <= 1.
double near_radius(std::size_t n, double gamma, double eta);

/// to if within eta of from, else the point at distance eta towards to.
Point2 steer(Point2 from, Point2 to, double eta);

}  // namespace clrrt
