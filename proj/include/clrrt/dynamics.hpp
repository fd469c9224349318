#pragma once

#include <utility>

#include "clrrt/geometry.hpp"
#include "clrrt/reference_path.hpp"

namespace clrrt {

/// Unicycle state: position (x1, x2) [m], heading x3 [rad] with 0 along +x2,
/// speed x4 [m/s].
struct State {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

/// Time derivative of a State; same layout.
using StateDerivative = State;

/// Turn rate u1 [rad/s] and acceleration u2 [m/s^2].
struct Control {
  double u1 = 0.0;
  double u2 = 0.0;

  friend bool operator==(const Control&, const Control&) = default;
};

struct ControllerParams {
  double lookahead = 3.0;
  double cruise_speed = 2.0;
  double k_heading = 2.0;
  double k_speed = 1.0;
  double u1_min = -1.0;
  double u1_max = 1.0;
  double u2_min = -1.0;
  double u2_max = 1.0;

  /// Throws ConfigError if a gain/limit invariant is violated.
  void validate() const;

  friend bool operator==(const ControllerParams&, const ControllerParams&) = default;
};

/// Controlled plant: state derivative and output map.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;
  virtual StateDerivative derivative(const State& x, const Control& u) const = 0;
  virtual Point2 output(const State& x) const = 0;
};

/// x1' = x4 sin x3, x2' = x4 cos x3, x3' = u1, x4' = u2; output (x1, x2).
class UnicycleModel final : public DynamicsModel {
 public:
  StateDerivative derivative(const State& x, const Control& u) const override;
  Point2 output(const State& x) const override { return {x.x1, x.x2}; }
};

StateDerivative unicycle_derivative(const State& x, const Control& u);
Point2 output_map(const State& x);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

/// One classical RK4 step with u held over dt; heading is re-wrapped afterwards.
State integrate_step(const DynamicsModel& model, const State& x, const Control& u, double dt);

/// Pure-pursuit heading law plus proportional speed law. Returns the control
/// and the updated (never decreasing) arc-length progress along ref.
std::pair<Control, double> pure_pursuit_control(const ControllerParams& params, const State& x,
                                                const ReferencePath& ref, double progress);

}  // namespace clrrt
