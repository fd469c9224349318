#pragma once

#include <optional>
#include <span>
#include <vector>

#include "clrrt/dynamics.hpp"
#include "clrrt/geometry.hpp"
#include "clrrt/reference_path.hpp"

namespace clrrt {

struct TrajectorySample {
  double t = 0.0;
  State state;
  Control control;  // applied from t until the next sample (held at the last one)

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

/// Time-stamped closed-loop state trajectory with its arc length cached.
class Trajectory {
 public:
  explicit Trajectory(const TrajectorySample& first) : samples_{first} {}

  /// Appends a sample; t must exceed the previous sample's t.
  void push_back(const TrajectorySample& sample);

  /// Replaces the control held at the last sample.
  void set_back_control(const Control& u) { samples_.back().control = u; }

  std::span<const TrajectorySample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const TrajectorySample& front() const { return samples_.front(); }
  const TrajectorySample& back() const { return samples_.back(); }

  /// Arc length of the output projection (sum of chords), accumulated on push_back.
  double cost() const { return cost_; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<TrajectorySample> samples_;
  double cost_ = 0.0;
};

/// Recomputes the arc-length cost from the samples.
double trajectory_cost(const Trajectory& trajectory);

/// True iff every chord between consecutive output samples is collision free.
bool trajectory_collision_free(const Workspace& ws, const Trajectory& trajectory);

struct SimLimits {
  double dt = 0.05;
  double reach_tolerance = 0.5;
  double max_time_factor = 3.0;
  double collision_check_spacing = 0.25;

  /// Throws ConfigError unless all positive and dt * cruise_speed fits the spacing.
  void validate(const ControllerParams& controller) const;

  friend bool operator==(const SimLimits&, const SimLimits&) = default;
};

/// Closed-loop prediction: runs the pure-pursuit controller on the model from
/// x0 along ref until the output comes within reach_tolerance of ref.back().
/// Returns nullopt (diverged) once simulated time exceeds
/// max_time_factor * ref.length() / cruise_speed + 10 s.
std::optional<Trajectory> propagate(const DynamicsModel& model,
                                    const ControllerParams& controller,
                                    const SimLimits& limits, const State& x0,
                                    const ReferencePath& ref);

}  // namespace clrrt
