#include "clrrt/reference_path.hpp"

#include <algorithm>

namespace clrrt {

ReferencePath::ReferencePath(std::vector<Point2> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.empty()) throw ConfigError("reference path needs at least one waypoint");
  cumulative_.reserve(waypoints_.size());
  cumulative_.push_back(0.0);
  if (!is_finite(waypoints_[0])) throw ConfigError("reference waypoint is not finite");
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    if (!is_finite(waypoints_[i])) throw ConfigError("reference waypoint is not finite");
    if (waypoints_[i] == waypoints_[i - 1]) {
      throw ConfigError("reference path repeats a waypoint");
    }
    cumulative_.push_back(cumulative_.back() + distance(waypoints_[i - 1], waypoints_[i]));
  }
}

Point2 ReferencePath::point_at(double s) const {
  if (waypoints_.size() == 1 || s <= 0.0) return waypoints_.front();
  if (s >= length()) return waypoints_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const auto i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  const double span = cumulative_[i + 1] - cumulative_[i];
  const double t = (s - cumulative_[i]) / span;
  return waypoints_[i] + t * (waypoints_[i + 1] - waypoints_[i]);
}

double ReferencePath::closest_arclength(Point2 p, double from) const {
  if (waypoints_.size() == 1) return 0.0;
  from = std::clamp(from, 0.0, length());
  double best_s = from;
  double best_d2 = squared_norm(point_at(from) - p);
  for (std::size_t i = 0; i + 1 < waypoints_.size(); ++i) {
    if (cumulative_[i + 1] < from) continue;
    const Point2 a = waypoints_[i];
    const Point2 d = waypoints_[i + 1] - a;
    const double span = cumulative_[i + 1] - cumulative_[i];
    double t = dot(p - a, d) / squared_norm(d);
    const double t_min = std::max(0.0, (from - cumulative_[i]) / span);
    t = std::clamp(t, t_min, 1.0);
    const double d2 = squared_norm(a + t * d - p);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_s = cumulative_[i] + t * span;
    }
  }
  return std::max(best_s, from);
}

}  // namespace clrrt
