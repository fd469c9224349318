#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clrrt/planner.hpp"

namespace clrrt {

/// Complete description of one planning experiment.
struct Scenario {
  std::string name;
  Box bounds;
  std::vector<Obstacle> obstacles;
  GoalRegion goal;
  State x_init;
  PlannerParams params;
  std::size_t iterations = 1500;
  std::uint64_t seed = 1;
  ControllerParams controller;
  SimLimits limits;
  std::vector<Point2> waypoints;  // sequential mode: goal disks of radius goal.radius

  /// Builds the workspace; throws ConfigError on invalid geometry.
  Workspace workspace() const;
  PlanningProblem problem() const;

  /// Checks every module invariant the scenario feeds. Throws ConfigError.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// JSON text <-> Scenario. Missing keys take defaults; unknown keys are rejected.
Scenario parse_scenario(std::string_view text);
std::string serialize_scenario(const Scenario& scenario);

/// Compiled-in scenarios: "track_pt1" (point to point) and "track_pt2" (four waypoints).
Scenario builtin_scenario(std::string_view name);
std::vector<std::string> builtin_scenario_names();

/// Resolves a bundled name or reads a file path.
Scenario load_scenario(const std::string& name_or_path);

}  // namespace clrrt
