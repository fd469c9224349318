#include "clrrt/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace clrrt {

using nlohmann::json;

namespace {

void only_keys(const json& object, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& item : object.items()) {
    bool known = false;
    for (std::string_view key : allowed) known = known || item.key() == key;
    if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
  }
}

double number(const json& value, std::string_view where) {
  if (!value.is_number()) throw ConfigError(std::string(where) + " must be a number");
  return value.get<double>();
}

template <typename T>
void read(const json& object, const char* key, T& out, std::string_view where) {
  if (!object.contains(key)) return;
  const json& value = object.at(key);
  const std::string path = std::string(where) + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!value.is_boolean()) throw ConfigError(path + " must be a boolean");
    out = value.get<bool>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!value.is_number_unsigned()) throw ConfigError(path + " must be a non-negative integer");
    out = value.get<T>();
  } else {
    out = number(value, path);
  }
}

Point2 point(const json& value, std::string_view where) {
  if (!value.is_array() || value.size() != 2) {
    throw ConfigError(std::string(where) + " must be a [x1, x2] pair");
  }
  return {number(value[0], where), number(value[1], where)};
}

json point_json(Point2 p) { return json::array({p.x1, p.x2}); }

Obstacle obstacle(const json& value) {
  only_keys(value, "obstacle", {"type", "center", "radius", "vertices"});
  const std::string type = value.value("type", "");
  if (type == "circle") {
    if (!value.contains("center") || !value.contains("radius")) {
      throw ConfigError("circle obstacle needs center and radius");
    }
    return Circle{point(value.at("center"), "circle.center"),
                  number(value.at("radius"), "circle.radius")};
  }
  if (type == "polygon") {
    if (!value.contains("vertices") || !value.at("vertices").is_array()) {
      throw ConfigError("polygon obstacle needs a vertices array");
    }
    ConvexPolygon polygon;
    for (const json& v : value.at("vertices")) polygon.vertices.push_back(point(v, "vertex"));
    return polygon;
  }
  throw ConfigError("obstacle type must be 'circle' or 'polygon'");
}

json obstacle_json(const Obstacle& o) {
  if (const auto* c = std::get_if<Circle>(&o)) {
    return json{{"type", "circle"}, {"center", point_json(c->center)}, {"radius", c->radius}};
  }
  json vertices = json::array();
  for (Point2 p : std::get<ConvexPolygon>(o).vertices) vertices.push_back(point_json(p));
  return json{{"type", "polygon"}, {"vertices", vertices}};
}

Scenario from_json(const json& doc) {
  only_keys(doc, "scenario",
            {"name", "workspace", "start", "planner", "controller", "limits", "waypoints"});
  Scenario s;
  s.name = doc.value("name", "");

  if (!doc.contains("workspace")) throw ConfigError("scenario needs a workspace section");
  const json& ws = doc.at("workspace");
  only_keys(ws, "workspace", {"bounds", "obstacles", "goal"});
  if (!ws.contains("bounds") || !ws.contains("goal")) {
    throw ConfigError("workspace needs bounds and goal");
  }
  only_keys(ws.at("bounds"), "workspace.bounds", {"min", "max"});
  s.bounds = Box{point(ws.at("bounds").value("min", json()), "bounds.min"),
                 point(ws.at("bounds").value("max", json()), "bounds.max")};
  if (ws.contains("obstacles")) {
    if (!ws.at("obstacles").is_array()) throw ConfigError("obstacles must be an array");
    for (const json& o : ws.at("obstacles")) s.obstacles.push_back(obstacle(o));
  }
  const json& goal = ws.at("goal");
  only_keys(goal, "workspace.goal", {"center", "radius"});
  s.goal = GoalRegion{point(goal.value("center", json()), "goal.center"),
                      number(goal.value("radius", json()), "goal.radius")};

  if (!doc.contains("start")) throw ConfigError("scenario needs a start state");
  const json& start = doc.at("start");
  if (!start.is_array() || start.size() != 4) {
    throw ConfigError("start must be [x1, x2, x3, x4]");
  }
  s.x_init = State{number(start[0], "start"), number(start[1], "start"),
                   number(start[2], "start"), number(start[3], "start")};

  if (doc.contains("planner")) {
    const json& p = doc.at("planner");
    only_keys(p, "planner", {"eta", "gamma_scale", "use_heuristic", "iterations", "seed"});
    read(p, "eta", s.params.eta, "planner");
    read(p, "gamma_scale", s.params.gamma_scale, "planner");
    read(p, "use_heuristic", s.params.use_heuristic, "planner");
    read(p, "iterations", s.iterations, "planner");
    read(p, "seed", s.seed, "planner");
  }
  if (doc.contains("controller")) {
    const json& c = doc.at("controller");
    only_keys(c, "controller",
              {"lookahead", "cruise_speed", "k_heading", "k_speed", "u1_min", "u1_max", "u2_min",
               "u2_max"});
    read(c, "lookahead", s.controller.lookahead, "controller");
    read(c, "cruise_speed", s.controller.cruise_speed, "controller");
    read(c, "k_heading", s.controller.k_heading, "controller");
    read(c, "k_speed", s.controller.k_speed, "controller");
    read(c, "u1_min", s.controller.u1_min, "controller");
    read(c, "u1_max", s.controller.u1_max, "controller");
    read(c, "u2_min", s.controller.u2_min, "controller");
    read(c, "u2_max", s.controller.u2_max, "controller");
  }
  if (doc.contains("limits")) {
    const json& l = doc.at("limits");
    only_keys(l, "limits", {"dt", "reach_tolerance", "max_time_factor", "collision_check_spacing"});
    read(l, "dt", s.limits.dt, "limits");
    read(l, "reach_tolerance", s.limits.reach_tolerance, "limits");
    read(l, "max_time_factor", s.limits.max_time_factor, "limits");
    read(l, "collision_check_spacing", s.limits.collision_check_spacing, "limits");
  }
  if (doc.contains("waypoints")) {
    if (!doc.at("waypoints").is_array()) throw ConfigError("waypoints must be an array");
    for (const json& w : doc.at("waypoints")) s.waypoints.push_back(point(w, "waypoint"));
  }
  return s;
}

json to_json(const Scenario& s) {
  json obstacles = json::array();
  for (const Obstacle& o : s.obstacles) obstacles.push_back(obstacle_json(o));
  json doc = {
      {"name", s.name},
      {"workspace",
       {{"bounds", {{"min", point_json(s.bounds.min)}, {"max", point_json(s.bounds.max)}}},
        {"obstacles", obstacles},
        {"goal", {{"center", point_json(s.goal.center)}, {"radius", s.goal.radius}}}}},
      {"start", json::array({s.x_init.x1, s.x_init.x2, s.x_init.x3, s.x_init.x4})},
      {"planner",
       {{"eta", s.params.eta},
        {"gamma_scale", s.params.gamma_scale},
        {"use_heuristic", s.params.use_heuristic},
        {"iterations", s.iterations},
        {"seed", s.seed}}},
      {"controller",
       {{"lookahead", s.controller.lookahead},
        {"cruise_speed", s.controller.cruise_speed},
        {"k_heading", s.controller.k_heading},
        {"k_speed", s.controller.k_speed},
        {"u1_min", s.controller.u1_min},
        {"u1_max", s.controller.u1_max},
        {"u2_min", s.controller.u2_min},
        {"u2_max", s.controller.u2_max}}},
      {"limits",
       {{"dt", s.limits.dt},
        {"reach_tolerance", s.limits.reach_tolerance},
        {"max_time_factor", s.limits.max_time_factor},
        {"collision_check_spacing", s.limits.collision_check_spacing}}},
  };
  if (!s.waypoints.empty()) {
    json waypoints = json::array();
    for (Point2 w : s.waypoints) waypoints.push_back(point_json(w));
    doc["waypoints"] = waypoints;
  }
  return doc;
}

// Ring track: 100 x 100 outer bounds, 60 x 60 inner block, 20 m lanes.
Scenario track_base() {
  Scenario s;
  s.bounds = Box{{-50.0, -50.0}, {50.0, 50.0}};
  s.obstacles.push_back(
      ConvexPolygon{{{-30.0, -30.0}, {30.0, -30.0}, {30.0, 30.0}, {-30.0, 30.0}}});
  s.x_init = State{-25.0, -45.0, 0.0, 0.0};
  s.iterations = 1500;
  s.seed = 1;
  return s;
}

}  // namespace

Workspace Scenario::workspace() const { return Workspace(bounds, obstacles, goal); }

PlanningProblem Scenario::problem() const {
  return PlanningProblem{workspace(), x_init, controller, limits, params};
}

void Scenario::validate() const {
  params.validate();
  controller.validate();
  limits.validate(controller);
  const Workspace ws = workspace();
  if (!ws.point_in_free(output_map(x_init))) {
    throw ConfigError("start state is in collision or outside the workspace");
  }
  for (Point2 w : waypoints) {
    if (!is_finite(w)) throw ConfigError("waypoint is not finite");
    ws.with_goal(GoalRegion{w, goal.radius});
  }
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario s = from_json(doc);
  s.validate();
  return s;
}

std::string serialize_scenario(const Scenario& scenario) {
  return to_json(scenario).dump(2) + "\n";
}

Scenario builtin_scenario(std::string_view name) {
  if (name == "track_pt1") {
    Scenario s = track_base();
    s.name = "track_pt1";
    s.goal = GoalRegion{{48.0, 33.0}, 2.0};
    return s;
  }
  if (name == "track_pt2") {
    Scenario s = track_base();
    s.name = "track_pt2";
    s.waypoints = {{40.0, -40.0}, {40.0, 40.0}, {-40.0, 40.0}, {-40.0, -40.0}};
    s.goal = GoalRegion{s.waypoints.back(), 2.0};
    return s;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

std::vector<std::string> builtin_scenario_names() { return {"track_pt1", "track_pt2"}; }

Scenario load_scenario(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  fs::path path(name_or_path);
  if (!fs::is_regular_file(path)) {
    const char* env = std::getenv("CLRRT_SCENARIO_DIR");
    const fs::path dir = env != nullptr ? fs::path(env) : fs::path(CLRRT_SCENARIO_DIR);
    const fs::path bundled = dir / (name_or_path + ".json");
    if (!fs::is_regular_file(bundled)) {
      for (const std::string& known : builtin_scenario_names()) {
        if (known == name_or_path) return builtin_scenario(known);
      }
      throw ConfigError("scenario '" + name_or_path + "' is neither a file nor a bundled name");
    }
    path = bundled;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_scenario(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace clrrt
