#include "clrrt/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace clrrt {

void PlannerParams::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("planner eta must be > 0");
  if (!(gamma_scale > 0.0) || !std::isfinite(gamma_scale)) {
    throw ConfigError("planner gamma_scale must be > 0");
  }
}

Planner::Planner(PlanningProblem problem)
    : problem_(std::move(problem)),
      output_(problem_.workspace.bounds(), problem_.params.eta) {
  problem_.params.validate();
  problem_.controller.validate();
  problem_.limits.validate(problem_.controller);
  if (!problem_.model) throw ConfigError("planning problem has no dynamics model");
  const State& x = problem_.x_init;
  if (!std::isfinite(x.x1) || !std::isfinite(x.x2) || !std::isfinite(x.x3) ||
      !std::isfinite(x.x4)) {
    throw ConfigError("initial state is not finite");
  }
  const Point2 y_init = problem_.model->output(x);
  if (!problem_.workspace.point_in_free(y_init)) {
    throw ConfigError("initial state is in collision or outside the workspace");
  }

  const TrajNodeId root_traj =
      trajectories_.add_root(Trajectory(TrajectorySample{0.0, x, Control{}}), NodeId{0});
  OutputNode root{NodeId{0}, y_init, 0.0, 0.0, heuristic(y_init), std::nullopt, root_traj};
  output_.insert(root, {});
}

double Planner::heuristic(Point2 y) const {
  return problem_.params.use_heuristic ? problem_.workspace.heuristic(y) : 0.0;
}

Key Planner::key_of(NodeId id) const {
  const OutputNode& v = output_.node(id);
  return Key{v.g_bar + v.h, v.g_bar};
}

void Planner::update_queue(NodeId id) {
  const OutputNode& v = output_.node(id);
  if (!v.stationary()) {
    if (queue_.contains(id)) {
      queue_.update(id, key_of(id));
    } else {
      queue_.push(id, key_of(id));
    }
  } else if (queue_.contains(id)) {
    queue_.remove(id);
  }
}

void Planner::update_goal(NodeId id) {
  const OutputNode& v = output_.node(id);
  if (!problem_.workspace.in_goal(v.y)) return;
  const Key key{v.g_bar, 0.0};
  if (goal_queue_.contains(id)) {
    goal_queue_.update(id, key);
  } else {
    goal_queue_.push(id, key);
  }
}

std::optional<Trajectory> Planner::simulate(const State& x0, const ReferencePath& ref) const {
  auto sigma = propagate(*problem_.model, problem_.controller, problem_.limits, x0, ref);
  if (!sigma || !trajectory_collision_free(problem_.workspace, *sigma)) return std::nullopt;
  return sigma;
}

bool Planner::extend(Point2 sample) {
  const Workspace& ws = problem_.workspace;
  const PlannerParams& params = problem_.params;

  const NodeId nearest = output_.nearest(sample);
  const Point2 y_nearest = output_.node(nearest).y;
  const Point2 y_new = steer(y_nearest, sample, params.eta);
  if (y_new == y_nearest || !ws.segment_collision_free(y_nearest, y_new)) return false;

  const NodeId new_id = output_.next_node_id();
  OutputNode v_new{new_id, y_new, kInfinity, kInfinity, heuristic(y_new), std::nullopt,
                   std::nullopt};

  const double gamma = params.gamma_scale * std::max(ws.bounds().width(), ws.bounds().height());
  std::vector<NodeId> near = output_.near(y_new, near_radius(output_.node_count(), gamma, params.eta));
  if (!std::binary_search(near.begin(), near.end(), nearest)) {
    near.insert(std::upper_bound(near.begin(), near.end(), nearest), nearest);
  }

  // Segments are symmetric, so one test serves both directions.
  std::vector<NodeId> linked;
  for (NodeId u : near) {
    const Point2 y_u = output_.node(u).y;
    if (y_u != y_new && ws.segment_collision_free(y_new, y_u)) linked.push_back(u);
  }
  std::vector<OutputEdge> edges;
  edges.reserve(2 * linked.size());
  std::uint32_t next_edge = output_.next_edge_id().value;
  for (NodeId u : linked) {
    edges.push_back(OutputEdge{EdgeId{next_edge++}, new_id, u,
                               ReferencePath::segment(y_new, output_.node(u).y)});
  }
  // E_succ is exactly the new node's outgoing list once inserted.
  const auto succ_count = static_cast<std::uint32_t>(linked.size());
  const std::size_t first_pred = edges.size();
  for (NodeId u : linked) {
    edges.push_back(OutputEdge{EdgeId{next_edge++}, u, new_id,
                               ReferencePath::segment(output_.node(u).y, y_new)});
  }

  for (std::size_t i = first_pred; i < edges.size(); ++i) {
    const OutputEdge& e = edges[i];
    const OutputNode& pred = output_.node(e.tail);
    if (!pred.parent_trajectory) continue;  // no realized internal state yet
    const TrajNodeId pred_traj = *pred.parent_trajectory;
    const State x_pred = trajectories_.node(pred_traj).trajectory.terminal;
    const auto sigma = simulate(x_pred, e.reference);
    if (!sigma) continue;
    const double cost = sigma->cost();
    const TrajNodeId sigma_id =
        trajectories_.add_trajectory(pred_traj, *sigma, e.id, new_id, succ_count);
    // pred.g_bar is the realized cost of pred's internal-state trajectory.
    const double value = pred.g_bar + cost;
    if (v_new.g_bar > value) {
      v_new.g_bar = value;
      v_new.parent_output = pred.id;
      v_new.parent_trajectory = sigma_id;
    }
  }

  output_.insert(std::move(v_new), std::move(edges));
  update_queue(new_id);
  update_goal(new_id);
  return true;
}

void Planner::replan(ReplanMode mode) {
  for (;;) {
    if (queue_.empty()) break;
    if (mode == ReplanMode::kGoalBounded && !(queue_.top_key() < goal_queue_.top_key())) break;

    const NodeId v_id = queue_.pop();
    OutputNode& v = output_.node(v_id);
    v.g = v.g_bar;
    const TrajNodeId v_traj = *v.parent_trajectory;
    const State x = trajectories_.node(v_traj).trajectory.terminal;

    const std::uint32_t pending_count = trajectories_.node(v_traj).pending_count;
    trajectories_.node(v_traj).pending_count = 0;
    for (std::uint32_t i = 0; i < pending_count; ++i) {
      const OutputEdge& e = output_.edge(output_.outgoing(v_id)[i]);
      const auto sigma = simulate(x, e.reference);
      if (!sigma) continue;
      trajectories_.add_trajectory(v_traj, *sigma, e.id, e.head,
                                   static_cast<std::uint32_t>(output_.outgoing(e.head).size()));
    }

    const double g = output_.node(v_id).g;
    for (TrajNodeId s : trajectories_.successors(v_traj)) {
      const TrajectoryNode& succ_traj = trajectories_.node(s);
      OutputNode& w = output_.node(succ_traj.output_node);
      const double value = g + succ_traj.trajectory.cost;
      if (w.g_bar > value) {
        w.g_bar = value;
        w.parent_output = v_id;
        w.parent_trajectory = s;
        update_queue(w.id);
        update_goal(w.id);
      }
    }
  }
}

std::optional<double> Planner::best_cost() const {
  const double k1 = goal_queue_.top_key().k1;
  if (!std::isfinite(k1)) return std::nullopt;
  return k1;
}

Solution Planner::construct_solution() const {
  Solution solution;
  for (const OutputNode& v : output_.nodes()) {
    if (v.id == root() || !std::isfinite(v.g_bar)) continue;
    const TrajNodeId t = *v.parent_trajectory;
    solution.tree.push_back(
        SolutionEdge{v.id, *v.parent_output, t, *trajectories_.node(t).parent});
  }
  if (const auto cost = best_cost()) {
    const NodeId goal = *goal_queue_.top();
    solution.goal_node = goal;
    solution.best_cost = *cost;
    solution.best_chain = trajectories_.chain_to(*output_.node(goal).parent_trajectory);
    std::vector<Trajectory> parts;
    for (TrajNodeId t : solution.best_chain) parts.push_back(trajectory(t));
    std::vector<const Trajectory*> views;
    for (const Trajectory& part : parts) views.push_back(&part);
    solution.best_trajectory = concatenate(views);
  }
  return solution;
}

Trajectory Planner::trajectory(TrajNodeId id) const {
  const TrajectoryNode& node = trajectories_.node(id);
  if (!node.parent) {
    return Trajectory(TrajectorySample{0.0, problem_.x_init, Control{}});
  }
  const State& x0 = trajectories_.node(*node.parent).trajectory.terminal;
  auto sigma = propagate(*problem_.model, problem_.controller, problem_.limits, x0,
                         output_.edge(*node.generating_edge).reference);
  if (!sigma || !(TrajectorySummary::of(*sigma) == node.trajectory)) {
    throw std::logic_error("trajectory regeneration is not reproducible");
  }
  return std::move(*sigma);
}

std::span<const EdgeId> Planner::pending(TrajNodeId id) const {
  const TrajectoryNode& node = trajectories_.node(id);
  return output_.outgoing(node.output_node).first(node.pending_count);
}

void Planner::check_invariants() const {
  const auto fail = [](const std::string& what) { throw std::logic_error("invariant: " + what); };
  std::size_t nonstationary = 0;
  std::size_t goals = 0;
  for (const OutputNode& v : output_.nodes()) {
    const std::string tag = "node " + std::to_string(v.id.value) + ": ";
    if (v.h < 0.0) fail(tag + "negative heuristic");
    if (v.g_bar > v.g) fail(tag + "g_bar exceeds g");
    if (!v.stationary()) {
      ++nonstationary;
      if (!queue_.contains(v.id)) fail(tag + "nonstationary but not queued");
      if (!(queue_.key(v.id) == key_of(v.id))) fail(tag + "stale queue key");
    } else if (queue_.contains(v.id)) {
      fail(tag + "stationary but queued");
    }
    if (problem_.workspace.in_goal(v.y)) {
      ++goals;
      if (!goal_queue_.contains(v.id)) fail(tag + "goal node missing from goal queue");
      if (!(goal_queue_.key(v.id) == Key{v.g_bar, 0.0})) fail(tag + "stale goal key");
    }
    if (v.id == root()) {
      if (v.g != 0.0 || v.g_bar != 0.0 || v.parent_output) fail(tag + "bad root");
      continue;
    }
    if (std::isfinite(v.g_bar)) {
      if (!v.parent_output || !v.parent_trajectory) fail(tag + "finite g_bar without parents");
      const TrajectoryNode& t = trajectories_.node(*v.parent_trajectory);
      if (t.output_node != v.id) fail(tag + "parent trajectory realizes another node");
      const OutputEdge& e = output_.edge(*t.generating_edge);
      if (e.head != v.id || e.tail != *v.parent_output) fail(tag + "parent edge mismatch");
    }
  }
  if (nonstationary != queue_.size()) fail("queue holds extra entries");
  if (goals != goal_queue_.size()) fail("goal queue holds extra entries");
  if (trajectories_.edge_count() + 1 != trajectories_.node_count()) fail("trajectory forest");
}

Point2 sample_free(const Workspace& ws, std::mt19937_64& rng) {
  const Box& b = ws.bounds();
  constexpr int kMaxAttempts = 1'000'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // 53 random bits -> [0, 1); fixed so sequences match across standard libraries.
    const double u1 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const Point2 p{b.min.x1 + u1 * b.width(), b.min.x2 + u2 * b.height()};
    if (ws.point_in_free(p)) return p;
  }
  throw ConfigError("free space too small to sample");
}

PlanRun plan(const PlanningProblem& problem, std::size_t iterations, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto ms_since = [&start] {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  PlanRun run;
  run.planner = std::make_unique<Planner>(problem);
  Planner& planner = *run.planner;
  std::mt19937_64 rng(seed);
  run.log.reserve(iterations);
  for (std::size_t i = 1; i <= iterations; ++i) {
    const Point2 sample = sample_free(problem.workspace, rng);
    planner.extend(sample);
    planner.replan();
#ifndef NDEBUG
    planner.check_invariants();
#endif
    run.log.push_back(IterationRecord{i, planner.best_cost(), planner.output_graph().node_count(),
                                      planner.trajectory_graph().node_count(), ms_since()});
  }
  run.solution = planner.construct_solution();
  run.wall_ms = ms_since();
  return run;
}

Trajectory concatenate(std::span<const Trajectory* const> parts) {
  if (parts.empty()) throw UsageError("concatenate() needs at least one trajectory");
  Trajectory joined = *parts.front();
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const Trajectory& next = *parts[p];
    if (!(next.front().state == joined.back().state)) {
      throw UsageError("concatenated trajectories are not state-continuous");
    }
    const double offset = joined.back().t - next.front().t;
    joined.set_back_control(next.front().control);
    const auto samples = next.samples();
    for (std::size_t i = 1; i < samples.size(); ++i) {
      TrajectorySample s = samples[i];
      s.t += offset;
      joined.push_back(s);
    }
  }
  return joined;
}

}  // namespace clrrt
