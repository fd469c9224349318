#include "clrrt/runner.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace clrrt {

PlanRun run_point_to_point(const Scenario& scenario) {
  scenario.validate();
  return plan(scenario.problem(), scenario.iterations, scenario.seed);
}

Scenario stage_scenario(const Scenario& scenario, std::size_t k, const State& start) {
  Scenario stage = scenario;
  stage.name = scenario.name + "/stage_" + std::to_string(k);
  stage.goal = GoalRegion{scenario.waypoints.at(k), scenario.goal.radius};
  stage.x_init = start;
  stage.seed = scenario.seed + k;
  stage.waypoints.clear();
  return stage;
}

SequentialResult run_sequential(const Scenario& scenario) {
  if (scenario.waypoints.empty()) throw ConfigError("sequential run needs at least one waypoint");
  scenario.validate();
  SequentialResult result;
  State start = scenario.x_init;
  const double handoff = scenario.goal.radius + scenario.limits.reach_tolerance;
  for (std::size_t k = 0; k < scenario.waypoints.size(); ++k) {
    const Scenario stage = stage_scenario(scenario, k, start);
    SequentialStage& done = result.stages.emplace_back(
        SequentialStage{stage.goal.center, start, stage.seed, {}});
    done.run = plan(stage.problem(), stage.iterations, stage.seed);
    const Solution& solution = done.run.solution;
    if (!solution.solved() ||
        distance(output_map(solution.best_trajectory->back().state), stage.goal.center) >
            handoff) {
      result.failed_stage = k;
      break;
    }
    if (result.executed) {
      const Trajectory* parts[] = {&*result.executed, &*solution.best_trajectory};
      result.executed = concatenate(parts);
    } else {
      result.executed = solution.best_trajectory;
    }
    start = solution.best_trajectory->back().state;
  }
  return result;
}

BenchRow bench_row(std::uint64_t seed, const PlanRun& run) {
  BenchRow row;
  row.seed = seed;
  row.solved = run.solution.solved();
  row.cost = run.solution.best_cost;
  for (const IterationRecord& r : run.log) {
    if (r.best_cost) {
      row.first_solution_iteration = r.iteration;
      break;
    }
  }
  row.nodes_y = run.planner->output_graph().node_count();
  row.nodes_sigma = run.planner->trajectory_graph().node_count();
  row.wall_ms = run.wall_ms;
  return row;
}

BenchSummary summarize(std::vector<BenchRow> rows) {
  BenchSummary summary;
  std::vector<double> costs;
  double wall = 0.0;
  for (const BenchRow& row : rows) {
    if (row.solved) costs.push_back(row.cost);
    wall += row.wall_ms;
  }
  summary.solved = costs.size();
  if (!rows.empty()) summary.mean_wall_ms = wall / static_cast<double>(rows.size());
  if (!costs.empty()) {
    std::sort(costs.begin(), costs.end());
    const std::size_t n = costs.size();
    summary.min_cost = costs.front();
    summary.max_cost = costs.back();
    summary.median_cost = n % 2 == 1 ? costs[n / 2] : 0.5 * (costs[n / 2 - 1] + costs[n / 2]);
  }
  summary.rows = std::move(rows);
  return summary;
}

BenchSummary bench(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                   unsigned jobs, const RunCallback& on_run) {
  if (seeds.empty()) throw ConfigError("bench needs at least one seed");
  scenario.validate();
  const PlanningProblem problem = scenario.problem();
  std::vector<BenchRow> rows(seeds.size());
  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;
  std::exception_ptr failure;

  const auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        const PlanRun run = plan(problem, scenario.iterations, seeds[i]);
        rows[i] = bench_row(seeds[i], run);
        if (on_run) {
          const std::lock_guard lock(callback_mutex);
          on_run(seeds[i], run);
        }
      } catch (...) {
        const std::lock_guard lock(callback_mutex);
        if (!failure) failure = std::current_exception();
        next = seeds.size();
      }
    }
  };

  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(seeds.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(std::move(rows));
}

}  // namespace clrrt
