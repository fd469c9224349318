#include "clrrt/closed_loop.hpp"

#include <cmath>

namespace clrrt {

void Trajectory::push_back(const TrajectorySample& sample) {
  if (!(sample.t > samples_.back().t)) {
    throw UsageError("trajectory samples must have strictly increasing time");
  }
  const TrajectorySample& last = samples_.back();
  cost_ += distance(Point2{last.state.x1, last.state.x2}, Point2{sample.state.x1, sample.state.x2});
  samples_.push_back(sample);
}

double trajectory_cost(const Trajectory& trajectory) {
  const auto samples = trajectory.samples();
  double cost = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    cost += distance(output_map(samples[i - 1].state), output_map(samples[i].state));
  }
  return cost;
}

bool trajectory_collision_free(const Workspace& ws, const Trajectory& trajectory) {
  thread_local std::vector<double> x1;
  thread_local std::vector<double> x2;
  x1.clear();
  x2.clear();
  for (const TrajectorySample& s : trajectory.samples()) {
    x1.push_back(s.state.x1);
    x2.push_back(s.state.x2);
  }
  return ws.polyline_collision_free(x1, x2);
}

void SimLimits::validate(const ControllerParams& controller) const {
  for (double v : {dt, reach_tolerance, max_time_factor, collision_check_spacing}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("simulation limits must be > 0");
  }
  // Chords are tested exactly; this bounds how far the true arc can stray from them.
  if (dt * controller.cruise_speed > collision_check_spacing) {
    throw ConfigError("dt * cruise_speed exceeds collision_check_spacing");
  }
}

std::optional<Trajectory> propagate(const DynamicsModel& model,
                                    const ControllerParams& controller,
                                    const SimLimits& limits, const State& x0,
                                    const ReferencePath& ref) {
  const Point2 goal = ref.back();
  const double reach2 = limits.reach_tolerance * limits.reach_tolerance;
  const double budget =
      limits.max_time_factor * ref.length() / controller.cruise_speed + 10.0;

  Trajectory trajectory(TrajectorySample{0.0, x0, Control{}});
  State x = x0;
  double progress = 0.0;
  for (std::size_t step = 1;; ++step) {
    if (squared_norm(model.output(x) - goal) <= reach2) return trajectory;
    const double t = static_cast<double>(step) * limits.dt;
    if (t > budget) return std::nullopt;
    const auto [u, next_progress] = pure_pursuit_control(controller, x, ref, progress);
    progress = next_progress;
    trajectory.set_back_control(u);
    x = integrate_step(model, x, u, limits.dt);
    trajectory.push_back(TrajectorySample{t, x, u});
  }
}

}  // namespace clrrt
