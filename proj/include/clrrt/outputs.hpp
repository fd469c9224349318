#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "clrrt/planner.hpp"
#include "clrrt/runner.hpp"
#include "clrrt/scenario.hpp"

namespace clrrt {

/// Raised when an output file cannot be written; the message names the path.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  bool svg = true;
  bool timing = false;  // fill elapsed_ms / wall times; off keeps files reproducible
};

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

std::string costs_csv(std::span<const IterationRecord> log, bool timing);
std::string solution_csv(const std::optional<Trajectory>& trajectory);
std::string result_json(const Scenario& scenario, const PlanRun& run, bool timing);
std::string bench_csv(const BenchSummary& summary, bool timing);
std::string sequential_json(const Scenario& scenario, const SequentialResult& result,
                            bool timing);

/// graph.svg content: reference edges, trajectory tree, best path, obstacles,
/// start and goal.
std::string render_svg(const Scenario& scenario, const Planner& planner,
                       const Solution& solution);

/// Writes text to path, creating parent directories. Throws OutputError.
void write_file(const std::filesystem::path& path, const std::string& text);

/// costs.csv, solution.csv, result.json and optionally graph.svg under dir.
void emit_outputs(const std::filesystem::path& dir, const Scenario& scenario,
                  const PlanRun& run, const OutputOptions& options);

/// One stage_<k>/ directory per attempted stage plus executed.csv and result.json.
void emit_sequential(const std::filesystem::path& dir, const Scenario& scenario,
                     const SequentialResult& result, const OutputOptions& options);

}  // namespace clrrt
