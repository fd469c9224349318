#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clrrt/closed_loop.hpp"
#include "clrrt/ids.hpp"

namespace clrrt {

/// What the graph keeps of a propagated trajectory. The samples themselves are
/// reproducible bit for bit by re-running propagate from the parent's terminal
/// state along the generating edge, so only the endpoint data is stored.
struct TrajectorySummary {
  State terminal;
  double cost = 0.0;
  std::uint32_t sample_count = 1;

  static TrajectorySummary of(const Trajectory& trajectory);

  friend bool operator==(const TrajectorySummary&, const TrajectorySummary&) = default;
};

/// A closed-loop state trajectory recorded in G_sigma.
struct TrajectoryNode {
  TrajNodeId id;
  TrajectorySummary trajectory;
  std::optional<EdgeId> generating_edge;  // empty only for the root
  NodeId output_node;                     // output node whose internal state this realizes
  std::optional<TrajNodeId> parent;       // tail of the unique incoming trajectory edge
  // Outgoing reference edges of output_node not yet simulated from the terminal
  // state: the first pending_count entries of its outgoing list. Adjacency is
  // append-only, so a prefix captures the list as it was at creation.
  std::uint32_t pending_count = 0;
};

struct TrajectoryEdge {
  TrajEdgeId id;
  TrajNodeId tail;
  TrajNodeId head;  // the edge's trajectory is head's trajectory
};

/// Append-only forest of closed-loop trajectories rooted at the initial state.
class TrajectoryGraph {
 public:
  /// Creates the root holding a single-sample trajectory.
  TrajNodeId add_root(const Trajectory& trajectory, NodeId output_node);

  /// Appends a node plus the edge pred -> node. The trajectory must start at
  /// exactly pred's terminal state; otherwise throws UsageError.
  TrajNodeId add_trajectory(TrajNodeId pred, const Trajectory& trajectory,
                            EdgeId generating_edge, NodeId output_node,
                            std::uint32_t pending_count);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const TrajectoryNode& node(TrajNodeId id) const { return nodes_.at(id.index()); }
  TrajectoryNode& node(TrajNodeId id) { return nodes_.at(id.index()); }
  const TrajectoryEdge& edge(TrajEdgeId id) const { return edges_.at(id.index()); }
  const std::vector<TrajectoryNode>& nodes() const { return nodes_; }
  const std::vector<TrajectoryEdge>& edges() const { return edges_; }

  /// Heads of the edges leaving id, ascending.
  std::span<const TrajNodeId> successors(TrajNodeId id) const {
    return successors_.at(id.index());
  }

  /// Root-to-id chain of node ids.
  std::vector<TrajNodeId> chain_to(TrajNodeId id) const;

 private:
  std::vector<TrajectoryNode> nodes_;
  std::vector<TrajectoryEdge> edges_;
  std::vector<std::vector<TrajNodeId>> successors_;
};

}  // namespace clrrt
