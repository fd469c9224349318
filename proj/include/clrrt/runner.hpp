#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "clrrt/planner.hpp"
#include "clrrt/scenario.hpp"

namespace clrrt {

/// Plans the scenario's point-to-point problem with its seed and iteration budget.
PlanRun run_point_to_point(const Scenario& scenario);

struct SequentialStage {
  Point2 waypoint;
  State start;
  std::uint64_t seed = 0;
  PlanRun run;
};

struct SequentialResult {
  std::vector<SequentialStage> stages;  // attempted stages, in order
  std::optional<std::size_t> failed_stage;
  std::optional<Trajectory> executed;  // all completed stages, joined

  bool completed() const { return !failed_stage.has_value(); }
};

/// Stage k plans from the previous stage's terminal state to waypoint k with
/// seed + k, each stage starting from a fresh graph. A stage hands off when its
/// best trajectory ends within goal.radius + reach_tolerance of the waypoint;
/// a stage without such a trajectory halts the run.
SequentialResult run_sequential(const Scenario& scenario);

/// Waypoint k's stage scenario given the state it starts from.
Scenario stage_scenario(const Scenario& scenario, std::size_t k, const State& start);

struct BenchRow {
  std::uint64_t seed = 0;
  bool solved = false;
  double cost = kInfinity;
  std::optional<std::size_t> first_solution_iteration;
  std::size_t nodes_y = 0;
  std::size_t nodes_sigma = 0;
  double wall_ms = 0.0;
};

struct BenchSummary {
  std::vector<BenchRow> rows;  // in seed-list order
  std::size_t solved = 0;
  double min_cost = kInfinity;
  double median_cost = kInfinity;
  double max_cost = kInfinity;
  double mean_wall_ms = 0.0;

  double success_rate() const {
    return rows.empty() ? 0.0 : static_cast<double>(solved) / static_cast<double>(rows.size());
  }
};

/// Row for one finished run.
BenchRow bench_row(std::uint64_t seed, const PlanRun& run);

/// Min / median / max over solved rows (median of an even count averages the
/// middle pair) and mean wall time over all rows.
BenchSummary summarize(std::vector<BenchRow> rows);

/// Called once per finished run, possibly from a worker thread, never concurrently.
using RunCallback = std::function<void(std::uint64_t seed, const PlanRun& run)>;

/// Runs the scenario once per seed, up to `jobs` runs at a time.
BenchSummary bench(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                   unsigned jobs = 1, const RunCallback& on_run = {});

}  // namespace clrrt
