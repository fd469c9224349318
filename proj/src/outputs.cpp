#include "clrrt/outputs.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <json.hpp>

namespace clrrt {

using nlohmann::json;

namespace {

json cost_json(double cost) { return std::isfinite(cost) ? json(cost) : json(nullptr); }

json summary_json(const Scenario& scenario, const PlanRun& run, bool timing) {
  const Solution& solution = run.solution;
  const Planner& planner = *run.planner;
  json doc = {
      {"scenario", scenario.name},
      {"seed", scenario.seed},
      {"iterations", run.log.size()},
      {"solved", solution.solved()},
      {"best_cost", cost_json(solution.best_cost)},
      {"goal_node", solution.goal_node ? json(solution.goal_node->value) : json(nullptr)},
      {"solution_samples", solution.best_trajectory ? solution.best_trajectory->size() : 0},
      {"tree_edges", solution.tree.size()},
      {"nodes_y", planner.output_graph().node_count()},
      {"edges_y", planner.output_graph().edge_count()},
      {"nodes_sigma", planner.trajectory_graph().node_count()},
      {"edges_sigma", planner.trajectory_graph().edge_count()},
      {"params", json::parse(serialize_scenario(scenario))},
  };
  std::optional<std::size_t> first;
  for (const IterationRecord& r : run.log) {
    if (r.best_cost) {
      first = r.iteration;
      break;
    }
  }
  doc["first_solution_iteration"] = first ? json(*first) : json(nullptr);
  if (timing) doc["wall_ms"] = run.wall_ms;
  return doc;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw std::logic_error("double formatting failed");
  return std::string(buffer, end);
}

std::string costs_csv(std::span<const IterationRecord> log, bool timing) {
  std::string out = "iteration,best_cost,nodes_y,nodes_sigma,elapsed_ms\n";
  for (const IterationRecord& r : log) {
    out += std::to_string(r.iteration);
    out += ',';
    if (r.best_cost) out += format_double(*r.best_cost);
    out += ',' + std::to_string(r.nodes_y) + ',' + std::to_string(r.nodes_sigma) + ',';
    if (timing) out += format_double(r.elapsed_ms);
    out += '\n';
  }
  return out;
}

std::string solution_csv(const std::optional<Trajectory>& trajectory) {
  std::string out = "t,x1,x2,x3,x4,u1,u2\n";
  if (!trajectory) return out;
  for (const TrajectorySample& s : trajectory->samples()) {
    for (double v : {s.t, s.state.x1, s.state.x2, s.state.x3, s.state.x4, s.control.u1}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(s.control.u2);
    out += '\n';
  }
  return out;
}

std::string result_json(const Scenario& scenario, const PlanRun& run, bool timing) {
  return summary_json(scenario, run, timing).dump(2) + "\n";
}

std::string bench_csv(const BenchSummary& summary, bool timing) {
  std::string out = "seed,solved,best_cost,first_solution_iteration,nodes_y,nodes_sigma,wall_ms\n";
  for (const BenchRow& row : summary.rows) {
    out += std::to_string(row.seed) + ',' + (row.solved ? "1" : "0") + ',';
    if (row.solved) out += format_double(row.cost);
    out += ',';
    if (row.first_solution_iteration) out += std::to_string(*row.first_solution_iteration);
    out += ',' + std::to_string(row.nodes_y) + ',' + std::to_string(row.nodes_sigma) + ',';
    if (timing) out += format_double(row.wall_ms);
    out += '\n';
  }
  return out;
}

std::string sequential_json(const Scenario& scenario, const SequentialResult& result,
                            bool timing) {
  json stages = json::array();
  double total = 0.0;
  for (std::size_t k = 0; k < result.stages.size(); ++k) {
    const SequentialStage& stage = result.stages[k];
    const Scenario stage_s = stage_scenario(scenario, k, stage.start);
    json s = summary_json(stage_s, stage.run, timing);
    s.erase("params");
    s["waypoint"] = json::array({stage.waypoint.x1, stage.waypoint.x2});
    s["start"] = json::array({stage.start.x1, stage.start.x2, stage.start.x3, stage.start.x4});
    if (stage.run.solution.solved()) total += stage.run.solution.best_cost;
    stages.push_back(std::move(s));
  }
  json doc = {
      {"scenario", scenario.name},
      {"seed", scenario.seed},
      {"completed", result.completed()},
      {"failed_stage", result.failed_stage ? json(*result.failed_stage) : json(nullptr)},
      {"total_cost", result.completed() ? json(total) : json(nullptr)},
      {"executed_samples", result.executed ? result.executed->size() : 0},
      {"stages", stages},
      {"params", json::parse(serialize_scenario(scenario))},
  };
  return doc.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw OutputError("failed writing " + path.string());
}

void emit_outputs(const std::filesystem::path& dir, const Scenario& scenario,
                  const PlanRun& run, const OutputOptions& options) {
  write_file(dir / "costs.csv", costs_csv(run.log, options.timing));
  write_file(dir / "solution.csv", solution_csv(run.solution.best_trajectory));
  write_file(dir / "result.json", result_json(scenario, run, options.timing));
  if (options.svg) {
    write_file(dir / "graph.svg", render_svg(scenario, *run.planner, run.solution));
  }
}

void emit_sequential(const std::filesystem::path& dir, const Scenario& scenario,
                     const SequentialResult& result, const OutputOptions& options) {
  for (std::size_t k = 0; k < result.stages.size(); ++k) {
    const SequentialStage& stage = result.stages[k];
    emit_outputs(dir / ("stage_" + std::to_string(k)), stage_scenario(scenario, k, stage.start),
                 stage.run, options);
  }
  write_file(dir / "executed.csv", solution_csv(result.executed));
  write_file(dir / "result.json", sequential_json(scenario, result, options.timing));
}

}  // namespace clrrt
