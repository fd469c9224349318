#include "clrrt/trajectory_graph.hpp"

#include <algorithm>

namespace clrrt {

TrajectorySummary TrajectorySummary::of(const Trajectory& trajectory) {
  return TrajectorySummary{trajectory.back().state, trajectory.cost(),
                           static_cast<std::uint32_t>(trajectory.size())};
}

TrajNodeId TrajectoryGraph::add_root(const Trajectory& trajectory, NodeId output_node) {
  if (!nodes_.empty()) throw UsageError("trajectory graph already has a root");
  if (trajectory.size() != 1) throw UsageError("root trajectory must hold exactly one sample");
  const TrajNodeId id{0};
  nodes_.push_back(TrajectoryNode{id, TrajectorySummary::of(trajectory), std::nullopt,
                                  output_node, std::nullopt, 0});
  successors_.emplace_back();
  return id;
}

TrajNodeId TrajectoryGraph::add_trajectory(TrajNodeId pred, const Trajectory& trajectory,
                                           EdgeId generating_edge, NodeId output_node,
                                           std::uint32_t pending_count) {
  if (pred.index() >= nodes_.size()) throw UsageError("unknown predecessor trajectory node");
  if (!(trajectory.front().state == nodes_[pred.index()].trajectory.terminal)) {
    throw UsageError("trajectory does not start at the predecessor's terminal state");
  }
  const auto id = TrajNodeId::from_index(nodes_.size());
  nodes_.push_back(TrajectoryNode{id, TrajectorySummary::of(trajectory), generating_edge,
                                  output_node, pred, pending_count});
  successors_.emplace_back();
  edges_.push_back(TrajectoryEdge{TrajEdgeId::from_index(edges_.size()), pred, id});
  successors_[pred.index()].push_back(id);
  return id;
}

std::vector<TrajNodeId> TrajectoryGraph::chain_to(TrajNodeId id) const {
  std::vector<TrajNodeId> chain;
  for (std::optional<TrajNodeId> cur = id; cur; cur = node(*cur).parent) chain.push_back(*cur);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace clrrt
