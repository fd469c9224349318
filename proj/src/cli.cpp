#include "clrrt/cli.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include <CLI11.hpp>

#include "clrrt/outputs.hpp"
#include "clrrt/runner.hpp"

namespace clrrt::cli {

namespace {

struct CommonOptions {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iterations;
  std::string out = "out";
  bool svg = true;
  bool timing = false;
};

void add_common(CLI::App& cmd, CommonOptions& o, const std::string& default_scenario,
                bool default_svg) {
  o.scenario = default_scenario;
  o.svg = default_svg;
  cmd.add_option("--scenario", o.scenario, "Bundled scenario name or JSON file path")
      ->capture_default_str();
  cmd.add_option("--seed", o.seed, "RNG seed (overrides the scenario's)");
  cmd.add_option("--iters", o.iterations, "Iterations per run (overrides the scenario's)");
  cmd.add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd.add_flag("--svg,!--no-svg", o.svg, "Write graph.svg");
  cmd.add_flag("--timing", o.timing, "Record wall-clock columns (makes outputs run-dependent)");
}

Scenario load(const CommonOptions& o) {
  Scenario s = load_scenario(o.scenario);
  if (o.seed) s.seed = *o.seed;
  if (o.iterations) s.iterations = *o.iterations;
  return s;
}

std::string cost_text(std::optional<double> cost) {
  return cost ? format_double(*cost) : std::string("none");
}

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw ConfigError("bad seed '" + std::string(text) + "'");
  }
  return value;
}

int plan_command(const CommonOptions& o, std::ostream& out) {
  const Scenario s = load(o);
  const PlanRun run = run_point_to_point(s);
  emit_outputs(o.out, s, run, OutputOptions{o.svg, o.timing});
  out << "scenario " << s.name << " seed " << s.seed << " iterations " << s.iterations << "\n";
  out << "best_cost " << cost_text(run.planner->best_cost()) << "\n";
  out << "nodes_y " << run.planner->output_graph().node_count() << " nodes_sigma "
      << run.planner->trajectory_graph().node_count() << "\n";
  if (o.timing) out << "wall_ms " << format_double(run.wall_ms) << "\n";
  out << "wrote " << o.out << "\n";
  return kOk;
}

int sequential_command(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const Scenario s = load(o);
  const SequentialResult result = run_sequential(s);
  emit_sequential(o.out, s, result, OutputOptions{o.svg, o.timing});
  for (std::size_t k = 0; k < result.stages.size(); ++k) {
    const SequentialStage& stage = result.stages[k];
    out << "stage " << k << " waypoint (" << format_double(stage.waypoint.x1) << ", "
        << format_double(stage.waypoint.x2) << ") seed " << stage.seed << " best_cost "
        << cost_text(stage.run.planner->best_cost()) << "\n";
  }
  out << "wrote " << o.out << "\n";
  if (!result.completed()) {
    err << "stage " << *result.failed_stage << " found no trajectory into its goal region\n";
    return kStageFailure;
  }
  return kOk;
}

int bench_command(const CommonOptions& o, const std::string& seeds_text, unsigned jobs,
                  std::ostream& out) {
  const Scenario s = load(o);
  const std::vector<std::uint64_t> seeds = parse_seed_list(seeds_text);
  const std::filesystem::path dir = o.out;
  const BenchSummary summary =
      bench(s, seeds, jobs, [&](std::uint64_t seed, const PlanRun& run) {
        Scenario seeded = s;
        seeded.seed = seed;
        emit_outputs(dir / ("seed_" + std::to_string(seed)), seeded, run,
                     OutputOptions{o.svg, o.timing});
      });
  write_file(dir / "bench.csv", bench_csv(summary, o.timing));
  out << "scenario " << s.name << " seeds " << seeds.size() << " iterations " << s.iterations
      << "\n";
  out << "success_rate " << format_double(summary.success_rate()) << " (" << summary.solved
      << "/" << summary.rows.size() << ")\n";
  if (summary.solved > 0) {
    out << "cost min " << format_double(summary.min_cost) << " median "
        << format_double(summary.median_cost) << " max " << format_double(summary.max_cost)
        << "\n";
  }
  out << "mean_wall_ms " << format_double(summary.mean_wall_ms) << "\n";
  out << "wrote " << (dir / "bench.csv").string() << "\n";
  return kOk;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::string_view rest = text;
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    const std::size_t dash = item.find('-');
    if (dash == std::string_view::npos) {
      seeds.push_back(parse_u64(item));
      continue;
    }
    const std::uint64_t lo = parse_u64(item.substr(0, dash));
    const std::uint64_t hi = parse_u64(item.substr(dash + 1));
    if (hi < lo) throw ConfigError("seed range '" + std::string(item) + "' is reversed");
    if (hi - lo >= 1'000'000) throw ConfigError("seed range is too long");
    for (std::uint64_t s = lo;; ++s) {
      seeds.push_back(s);
      if (s == hi) break;
    }
  }
  if (seeds.empty()) throw ConfigError("empty seed list");
  return seeds;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CL-RRT# kinodynamic planner with closed-loop prediction", "clrrt"};
  app.require_subcommand(1);

  CommonOptions plan_opts;
  CLI::App* plan_cmd = app.add_subcommand("plan", "Point-to-point planning run");
  add_common(*plan_cmd, plan_opts, "track_pt1", true);

  CommonOptions seq_opts;
  CLI::App* seq_cmd = app.add_subcommand("sequential", "Waypoint-by-waypoint planning run");
  add_common(*seq_cmd, seq_opts, "track_pt2", true);

  CommonOptions bench_opts;
  std::string seeds = "1-20";
  unsigned jobs = 1;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Repeat a point-to-point run over seeds");
  bench_opts.out = "bench";
  add_common(*bench_cmd, bench_opts, "track_pt1", false);
  bench_cmd->add_option("--seeds", seeds, "Seed list such as 1-20 or 1,3,5-7")
      ->capture_default_str();
  bench_cmd->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (plan_cmd->parsed()) return plan_command(plan_opts, out);
    if (seq_cmd->parsed()) return sequential_command(seq_opts, out, err);
    return bench_command(bench_opts, seeds, jobs, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const OutputError& e) {
    err << "output error: " << e.what() << "\n";
    return kOutputError;
  }
}

}  // namespace clrrt::cli
