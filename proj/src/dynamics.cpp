#include "clrrt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace clrrt {
namespace {

State axpy(const State& x, double h, const StateDerivative& k) {
  return {x.x1 + h * k.x1, x.x2 + h * k.x2, x.x3 + h * k.x3, x.x4 + h * k.x4};
}

}  // namespace

void ControllerParams::validate() const {
  const bool finite = std::isfinite(lookahead) && std::isfinite(cruise_speed) &&
                      std::isfinite(k_heading) && std::isfinite(k_speed) &&
                      std::isfinite(u1_min) && std::isfinite(u1_max) &&
                      std::isfinite(u2_min) && std::isfinite(u2_max);
  if (!finite) throw ConfigError("controller parameters must be finite");
  if (!(lookahead > 0.0)) throw ConfigError("controller lookahead must be > 0");
  if (!(cruise_speed > 0.0)) throw ConfigError("controller cruise_speed must be > 0");
  if (!(k_heading > 0.0) || !(k_speed > 0.0)) throw ConfigError("controller gains must be > 0");
  if (!(u1_min < u1_max) || !(u2_min < u2_max)) {
    throw ConfigError("control bounds need lower < upper");
  }
}

StateDerivative unicycle_derivative(const State& x, const Control& u) {
  return {x.x4 * std::sin(x.x3), x.x4 * std::cos(x.x3), u.u1, u.u2};
}

StateDerivative UnicycleModel::derivative(const State& x, const Control& u) const {
  return unicycle_derivative(x, u);
}

Point2 output_map(const State& x) { return {x.x1, x.x2}; }

double wrap_angle(double angle) {
  constexpr double kPi = std::numbers::pi;
  if (angle > -kPi && angle <= kPi) return angle;
  double wrapped = std::remainder(angle, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

State integrate_step(const DynamicsModel& model, const State& x, const Control& u, double dt) {
  const StateDerivative k1 = model.derivative(x, u);
  const StateDerivative k2 = model.derivative(axpy(x, 0.5 * dt, k1), u);
  const StateDerivative k3 = model.derivative(axpy(x, 0.5 * dt, k2), u);
  const StateDerivative k4 = model.derivative(axpy(x, dt, k3), u);
  const double w = dt / 6.0;
  State next{x.x1 + w * (k1.x1 + 2.0 * k2.x1 + 2.0 * k3.x1 + k4.x1),
             x.x2 + w * (k1.x2 + 2.0 * k2.x2 + 2.0 * k3.x2 + k4.x2),
             x.x3 + w * (k1.x3 + 2.0 * k2.x3 + 2.0 * k3.x3 + k4.x3),
             x.x4 + w * (k1.x4 + 2.0 * k2.x4 + 2.0 * k3.x4 + k4.x4)};
  next.x3 = wrap_angle(next.x3);
  return next;
}

std::pair<Control, double> pure_pursuit_control(const ControllerParams& params, const State& x,
                                                const ReferencePath& ref, double progress) {
  const Point2 position{x.x1, x.x2};
  const double next_progress = ref.closest_arclength(position, progress);
  const Point2 target = ref.point_at(std::min(next_progress + params.lookahead, ref.length()));
  // Heading 0 points along +x2, so the bearing is atan2(dx1, dx2).
  const double desired = std::atan2(target.x1 - x.x1, target.x2 - x.x2);
  Control u;
  u.u1 = std::clamp(params.k_heading * wrap_angle(desired - x.x3), params.u1_min, params.u1_max);
  u.u2 = std::clamp(params.k_speed * (params.cruise_speed - x.x4), params.u2_min, params.u2_max);
  return {u, next_progress};
}

}  // namespace clrrt
