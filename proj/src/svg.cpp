#include <algorithm>
#include <cstdio>
#include <string>

#include "clrrt/outputs.hpp"

namespace clrrt {

namespace {

constexpr double kPixelsPerMeter = 8.0;
constexpr double kMargin = 20.0;
constexpr std::size_t kMaxPolylinePoints = 6;

class Canvas {
 public:
  explicit Canvas(const Box& bounds) : bounds_(bounds) {}

  double width() const { return bounds_.width() * kPixelsPerMeter + 2 * kMargin; }
  double height() const { return bounds_.height() * kPixelsPerMeter + 2 * kMargin; }

  // Output x1 to the right, x2 up.
  void point(std::string& out, Point2 p) const {
    append(out, (p.x1 - bounds_.min.x1) * kPixelsPerMeter + kMargin);
    out += ',';
    append(out, (bounds_.max.x2 - p.x2) * kPixelsPerMeter + kMargin);
  }
  // Writes <prefix>x<suffix>="..." <prefix>y<suffix>="...".
  void attr(std::string& out, const char* prefix, Point2 p, const char* suffix = "") const {
    out += ' ';
    out += prefix;
    out += 'x';
    out += suffix;
    out += "=\"";
    append(out, (p.x1 - bounds_.min.x1) * kPixelsPerMeter + kMargin);
    out += "\" ";
    out += prefix;
    out += 'y';
    out += suffix;
    out += "=\"";
    append(out, (bounds_.max.x2 - p.x2) * kPixelsPerMeter + kMargin);
    out += '"';
  }
  static void append(std::string& out, double v) {
    char buffer[32];
    const int n = std::snprintf(buffer, sizeof buffer, "%.1f", v);
    out.append(buffer, static_cast<std::size_t>(n));
  }

 private:
  Box bounds_;
};

void polyline(std::string& out, const Canvas& canvas, const Trajectory& trajectory,
              const char* cls, std::size_t max_points) {
  const auto samples = trajectory.samples();
  const std::size_t stride =
      max_points == 0 ? 1 : std::max<std::size_t>(1, (samples.size() + max_points - 1) / max_points);
  out += "<polyline class=\"";
  out += cls;
  out += "\" points=\"";
  for (std::size_t i = 0; i < samples.size(); i += stride) {
    canvas.point(out, output_map(samples[i].state));
    out += ' ';
  }
  canvas.point(out, output_map(samples.back().state));
  out += "\"/>\n";
}

}  // namespace

std::string render_svg(const Scenario& scenario, const Planner& planner,
                       const Solution& solution) {
  const Canvas canvas(scenario.bounds);
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  Canvas::append(out, canvas.width());
  out += "\" height=\"";
  Canvas::append(out, canvas.height());
  out += "\">\n<style>"
         ".ref{stroke:#ff8c00;stroke-width:0.4;stroke-opacity:0.5}"
         ".traj{fill:none;stroke:#2e8b57;stroke-width:0.6;stroke-opacity:0.6}"
         ".best{fill:none;stroke:#ffc400;stroke-width:3}"
         ".obstacle{fill:#d62728;fill-opacity:0.8}"
         "</style>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<rect";
  canvas.attr(out, "", Point2{scenario.bounds.min.x1, scenario.bounds.max.x2});
  out += " width=\"";
  Canvas::append(out, scenario.bounds.width() * kPixelsPerMeter);
  out += "\" height=\"";
  Canvas::append(out, scenario.bounds.height() * kPixelsPerMeter);
  out += "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";

  for (const Obstacle& o : scenario.obstacles) {
    if (const auto* c = std::get_if<Circle>(&o)) {
      out += "<circle class=\"obstacle\"";
      canvas.attr(out, "c", c->center);
      out += " r=\"";
      Canvas::append(out, c->radius * kPixelsPerMeter);
      out += "\"/>\n";
    } else {
      out += "<polygon class=\"obstacle\" points=\"";
      for (Point2 p : std::get<ConvexPolygon>(o).vertices) {
        canvas.point(out, p);
        out += ' ';
      }
      out += "\"/>\n";
    }
  }

  const OutputGraph& graph = planner.output_graph();
  for (const OutputEdge& e : graph.edges()) {
    out += "<line class=\"ref\"";
    canvas.attr(out, "", graph.node(e.tail).y, "1");
    canvas.attr(out, "", graph.node(e.head).y, "2");
    out += "/>\n";
  }
  for (const TrajectoryEdge& e : planner.trajectory_graph().edges()) {
    polyline(out, canvas, planner.trajectory(e.head), "traj", kMaxPolylinePoints);
  }
  if (solution.best_trajectory) polyline(out, canvas, *solution.best_trajectory, "best", 0);

  out += "<circle class=\"goal\"";
  canvas.attr(out, "c", scenario.goal.center);
  out += " r=\"";
  Canvas::append(out, scenario.goal.radius * kPixelsPerMeter);
  out += "\" fill=\"#1f77b4\" fill-opacity=\"0.35\" stroke=\"#1f77b4\"/>\n";
  out += "<circle class=\"start\"";
  canvas.attr(out, "c", output_map(scenario.x_init));
  out += " r=\"5\" fill=\"#1f77b4\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace clrrt
