#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "clrrt/closed_loop.hpp"
#include "clrrt/dynamics.hpp"
#include "clrrt/geometry.hpp"
#include "clrrt/output_graph.hpp"
#include "clrrt/priority_queue.hpp"
#include "clrrt/trajectory_graph.hpp"

namespace clrrt {

struct PlannerParams {
  double eta = 8.0;           // steering / near-ball cap [m]
  double gamma_scale = 1.1;   // near-ball constant, times the workspace side length
  bool use_heuristic = true;  // false forces h = 0 (plain Dijkstra-style ordering)

  void validate() const;

  friend bool operator==(const PlannerParams&, const PlannerParams&) = default;
};

/// Everything the planner needs besides the iteration budget and seed.
struct PlanningProblem {
  Workspace workspace;
  State x_init;
  ControllerParams controller;
  SimLimits limits;
  PlannerParams params;
  std::shared_ptr<const DynamicsModel> model = std::make_shared<UnicycleModel>();
};

enum class ReplanMode {
  kGoalBounded,  // stop once Q.top_key() is not below Q_goal.top_key()
  kDrain,        // pop until Q is empty
};

/// One tree edge of the extracted solution: the trajectory realizing `node`.
struct SolutionEdge {
  NodeId node;
  NodeId parent_node;
  TrajNodeId trajectory;
  TrajNodeId parent_trajectory;
};

struct Solution {
  std::vector<SolutionEdge> tree;
  std::optional<NodeId> goal_node;
  std::vector<TrajNodeId> best_chain;         // root .. goal's parent trajectory
  std::optional<Trajectory> best_trajectory;  // best_chain concatenated, global time
  double best_cost = kInfinity;               // goal node's g_bar

  bool solved() const { return goal_node.has_value(); }
};

/// CL-RRT# search state: reference graph, trajectory graph and the two queues.
class Planner {
 public:
  /// Initializes both graphs at x_init. Throws ConfigError if its output is not free.
  explicit Planner(PlanningProblem problem);

  /// Grows the graphs towards `sample`. Returns false (state unchanged) when the
  /// steered reference segment collides or degenerates.
  bool extend(Point2 sample);

  /// Pops nonstationary nodes, simulating their pending outgoing references and
  /// relaxing trajectory-graph successors.
  void replan(ReplanMode mode = ReplanMode::kGoalBounded);

  Solution construct_solution() const;

  /// Cost-to-come of the best goal node, if any is reached.
  std::optional<double> best_cost() const;

  const PlanningProblem& problem() const { return problem_; }
  const Workspace& workspace() const { return problem_.workspace; }
  const OutputGraph& output_graph() const { return output_; }
  const TrajectoryGraph& trajectory_graph() const { return trajectories_; }
  const KeyedQueue& queue() const { return queue_; }
  const KeyedQueue& goal_queue() const { return goal_queue_; }
  NodeId root() const { return NodeId{0}; }

  Key key_of(NodeId id) const;

  /// Samples of a trajectory node, regenerated by re-running the closed-loop
  /// prediction that created it. Bitwise identical to the original run.
  Trajectory trajectory(TrajNodeId id) const;

  /// Reference edges still to be simulated from a trajectory node's terminal state.
  std::span<const EdgeId> pending(TrajNodeId id) const;

  /// Full scan of queue membership, keys and parent links. Throws std::logic_error.
  void check_invariants() const;

 private:
  std::optional<Trajectory> simulate(const State& x0, const ReferencePath& ref) const;
  double heuristic(Point2 y) const;
  void update_queue(NodeId id);
  void update_goal(NodeId id);

  PlanningProblem problem_;
  OutputGraph output_;
  TrajectoryGraph trajectories_;
  KeyedQueue queue_;
  KeyedQueue goal_queue_;
};

/// Uniform rejection sample over the free output space.
Point2 sample_free(const Workspace& ws, std::mt19937_64& rng);

struct IterationRecord {
  std::size_t iteration = 0;
  std::optional<double> best_cost;
  std::size_t nodes_y = 0;
  std::size_t nodes_sigma = 0;
  double elapsed_ms = 0.0;
};

struct PlanRun {
  std::vector<IterationRecord> log;
  Solution solution;
  std::unique_ptr<Planner> planner;
  double wall_ms = 0.0;
};

/// Sample / extend / replan for `iterations` rounds, then extract the solution.
PlanRun plan(const PlanningProblem& problem, std::size_t iterations, std::uint64_t seed);

/// Joins trajectories that share end/start states, offsetting time.
Trajectory concatenate(std::span<const Trajectory* const> parts);

}  // namespace clrrt
