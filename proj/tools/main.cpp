// Command-line front end: thin adapters over the planning and bench library.
// Exit codes: 0 success, 2 configuration error, 3 no solution found,
// 4 numeric divergence. Failures print a one-line JSON object to stderr.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config_io.hpp"
#include "ornith/bench.hpp"
#include "ornith/errors.hpp"
#include "ornith/trajectory.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitDivergence = 4;

struct Options {
  std::string subcommand;
  std::string vehicle_path;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool force = false;
};

void emit_error(const std::string& type, const std::string& message,
                const std::optional<double>& best_distance = {}) {
  ordered_json e;
  e["error"]["type"] = type;
  e["error"]["message"] = message;
  if (best_distance) e["error"]["best_distance"] = *best_distance;
  std::cerr << e.dump() << "\n";
}

ornith::Vehicle resolve_vehicle(const Options& opt) {
  std::string path = opt.vehicle_path;
  if (path.empty()) {
    const char* env = std::getenv("ORNITH_VEHICLE");
    if (env) path = env;
  }
  if (path.empty())
    throw ornith::ConfigError(
        "no vehicle file: pass --vehicle or set ORNITH_VEHICLE");
  return ornith::load_vehicle(path);
}

std::filesystem::path prepare_out_dir(const Options& opt) {
  namespace fs = std::filesystem;
  fs::path dir(opt.out_dir);
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec))
      throw ornith::ConfigError("--out exists and is not a directory: " +
                                dir.string());
    if (!fs::is_empty(dir, ec) && !opt.force)
      throw ornith::ConfigError("--out directory not empty (use --force): " +
                                dir.string());
  } else if (!fs::create_directories(dir, ec)) {
    throw ornith::ConfigError("cannot create --out directory: " + dir.string());
  }
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ornith::ConfigError("cannot write " + path.string());
  out << content;
  if (!out) throw ornith::ConfigError("write failed: " + path.string());
}

ordered_json state_summary(const ornith::FlightState& s,
                           const ornith::CharacteristicScales& sc) {
  ordered_json j;
  j["x_m"] = sc.to_m(s.x);
  j["z_m"] = sc.to_m(s.z);
  j["u"] = s.u;
  j["w"] = s.w;
  j["theta"] = s.theta;
  j["q"] = s.q;
  return j;
}

ordered_json maneuver_json(const ornith::Maneuver& m) {
  ordered_json j;
  j["delta_deg"] = m.delta_deg;
  j["f_hz"] = m.f_hz;
  return j;
}

int cmd_plan(const Options& opt, const ornith::Vehicle& vehicle) {
  cli::PlanJob job =
      cli::parse_plan_job(cli::load_json_file(opt.config_path), vehicle.scales);
  job.planner.tolerance = job.scenario.tolerance;
  job.planner.metric = job.scenario.metric;
  const auto dir = prepare_out_dir(opt);

  ornith::Trajectory traj =
      ornith::plan(job.scenario.start, job.scenario.target, job.planner,
                   vehicle.params, vehicle.scales);
  write_file(dir / "trajectory.json", ornith::trajectory_to_json(traj));
  write_file(dir / "timeseries.csv",
             ornith::trajectory_time_series_csv(traj, vehicle.params,
                                                vehicle.scales,
                                                job.planner.integrator));

  ordered_json out;
  out["solved"] = true;
  out["delta"] = ornith::accuracy(traj.final_state(), job.scenario.target,
                                  job.scenario.metric, vehicle.scales);
  out["energy_ws"] = traj.total_energy_ws;
  out["duration_s"] = traj.total_duration_s();
  out["segments"] = traj.segments.size();
  out["final_state"] = state_summary(traj.final_state(), vehicle.scales);
  out["files"] = {(dir / "trajectory.json").string(),
                  (dir / "timeseries.csv").string()};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_simulate(const Options& opt, const ornith::Vehicle& vehicle) {
  cli::SimulateJob job = cli::parse_simulate_job(
      cli::load_json_file(opt.config_path), vehicle.scales);
  const auto dir = prepare_out_dir(opt);

  ornith::Trajectory traj;
  traj.planner = "schedule";
  traj.start = job.start;
  ornith::FlightState s = job.start;
  for (const auto& [m, dur] : job.schedule) {
    ornith::Segment seg;
    seg.maneuver = m;
    seg.duration_s = dur;
    seg.start = s;
    s = ornith::integrate(s, m, dur, vehicle.params, vehicle.scales,
                          job.integrator);
    seg.end = s;
    seg.energy_ws = ornith::maneuver_energy(m, dur, ornith::EnergyModel{});
    traj.segments.push_back(seg);
  }
  traj.total_energy_ws = ornith::trajectory_energy(traj);

  write_file(dir / "timeseries.csv",
             ornith::trajectory_time_series_csv(traj, vehicle.params,
                                                vehicle.scales, job.integrator));
  write_file(dir / "trajectory.json", ornith::trajectory_to_json(traj));

  ordered_json out;
  out["duration_s"] = traj.total_duration_s();
  out["energy_ws"] = traj.total_energy_ws;
  out["final_state"] = state_summary(s, vehicle.scales);
  out["files"] = {(dir / "timeseries.csv").string(),
                  (dir / "trajectory.json").string()};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_sweep(const Options& opt, const ornith::Vehicle& vehicle) {
  ornith::SweepSpec spec =
      cli::parse_sweep_spec(cli::load_json_file(opt.config_path),
                            vehicle.scales, opt.seed, opt.jobs);
  const auto dir = prepare_out_dir(opt);

  ornith::SweepResult result =
      ornith::run_sweep(spec, vehicle.params, vehicle.scales);
  write_file(dir / "records.csv", ornith::records_to_csv(result.records));
  write_file(dir / "summary.csv",
             ornith::sweep_summary_to_csv(result.summary));

  ordered_json out;
  out["parameter"] = spec.parameter;
  out["scenarios"] = spec.scenarios.size();
  for (const ornith::SweepRow& row : result.summary) {
    ordered_json r;
    r["value"] = row.value_label;
    r["solved_rate"] = row.solved_rate;
    r["delta_mean"] = row.delta.mean;
    r["delta_sem"] = row.delta.sem;
    r["energy_mean"] = row.energy.mean;
    r["energy_sem"] = row.energy.sem;
    r["wall_mean"] = row.wall.mean;
    out["rows"].push_back(r);
  }
  out["files"] = {(dir / "records.csv").string(),
                  (dir / "summary.csv").string()};
  write_file(dir / "summary.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_compare(const Options& opt, const ornith::Vehicle& vehicle) {
  ornith::ComparisonSpec spec = cli::parse_comparison_spec(
      cli::load_json_file(opt.config_path), vehicle.scales, opt.seed);
  const auto dir = prepare_out_dir(opt);

  ornith::ComparisonReport report =
      ornith::run_comparison(spec, vehicle.params, vehicle.scales);
  write_file(dir / "records.csv", ornith::records_to_csv(report.records));
  write_file(dir / "clouds.csv", ornith::clouds_to_csv(report.clouds));

  ordered_json out;
  out["scenarios"] = spec.scenarios.size();
  out["match_budget"] = spec.match_budget;
  out["goal_half_side_m"] = spec.goal_half_side_m;
  for (const auto& s : report.summary) {
    ordered_json r;
    r["planner"] = s.planner;
    r["precision"] = s.precision;
    r["energy_mean_joint"] = s.energy_joint.mean;
    r["energy_sem_joint"] = s.energy_joint.sem;
    r["joint_count"] = s.joint_count;
    out["planners"].push_back(r);
  }
  out["files"] = {(dir / "records.csv").string(), (dir / "clouds.csv").string()};
  write_file(dir / "summary.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_perch(const Options& opt, const ornith::Vehicle& vehicle) {
  ornith::PerchSpec spec =
      cli::parse_perch_spec(cli::load_json_file(opt.config_path));
  const auto dir = prepare_out_dir(opt);

  std::vector<ornith::PerchRecord> records =
      ornith::run_perching(spec, vehicle.params, vehicle.scales);

  std::string csv = "altitude_m,solved,error_m,wall_s,flare_pattern\n";
  ordered_json out;
  bool all_solved = true;
  for (const ornith::PerchRecord& r : records) {
    char row[160];
    std::snprintf(row, sizeof row, "%.17g,%d,%.17g,%.17g,%d\n", r.altitude_m,
                  r.solved ? 1 : 0, r.error_m, r.wall_s, r.flare_pattern ? 1 : 0);
    csv += row;
    all_solved = all_solved && r.solved;

    ordered_json rec;
    rec["altitude_m"] = r.altitude_m;
    rec["solved"] = r.solved;
    rec["error_m"] = r.error_m;
    rec["wall_s"] = r.wall_s;
    rec["flare_pattern"] = r.flare_pattern;
    out["records"].push_back(rec);

    if (r.trajectory) {
      char name[64];
      std::snprintf(name, sizeof name, "trajectory_%g.json", r.altitude_m);
      write_file(dir / name, ornith::trajectory_to_json(*r.trajectory));
    }
  }
  out["all_solved"] = all_solved;
  write_file(dir / "perch.csv", csv);
  write_file(dir / "summary.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return all_solved ? kExitOk : kExitNoSolution;
}

int cmd_maneuvers(const Options& opt, const ornith::Vehicle& vehicle) {
  (void)vehicle;
  cli::ManeuversJob job =
      cli::parse_maneuvers_job(cli::load_json_file(opt.config_path));

  std::map<ornith::Maneuver, double> rates;
  if (!job.rates_file.empty()) {
    rates = cli::read_rates_csv(job.rates_file);
  } else {
    std::vector<std::string> paths = job.trajectory_paths;
    if (!job.trajectory_dir.empty()) {
      namespace fs = std::filesystem;
      std::error_code ec;
      if (!fs::is_directory(job.trajectory_dir, ec))
        throw ornith::ConfigError("trajectory_dir is not a directory: " +
                                  job.trajectory_dir);
      for (const auto& entry : fs::directory_iterator(job.trajectory_dir))
        if (entry.path().extension() == ".json")
          paths.push_back(entry.path().string());
      std::sort(paths.begin(), paths.end());
    }
    if (paths.empty())
      throw ornith::ConfigError("maneuvers: no trajectory files found");
    std::vector<ornith::Trajectory> trajectories;
    for (const std::string& path : paths) {
      std::ifstream in(path);
      if (!in) throw ornith::ConfigError("cannot open trajectory: " + path);
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      trajectories.push_back(ornith::trajectory_from_json(text));
    }
    rates = ornith::occurrence_rates(trajectories);
  }

  const auto dir = prepare_out_dir(opt);
  std::vector<ornith::Maneuver> reduced =
      ornith::reduce_maneuver_set(rates, job.threshold);
  write_file(dir / "rates.csv", ornith::rates_to_csv(rates));

  ordered_json out;
  out["threshold"] = job.threshold;
  out["total_maneuvers"] = rates.size();
  out["kept"] = reduced.size();
  out["maneuver_set"] = ordered_json::array();
  for (const ornith::Maneuver& m : reduced)
    out["maneuver_set"].push_back(maneuver_json(m));
  write_file(dir / "reduced.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-optimal trajectory planning for a flapping-wing UAV"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub, bool needs_seed) {
    sub->add_option("--vehicle", opt.vehicle_path,
                    "Vehicle JSON (default: $ORNITH_VEHICLE)");
    sub->add_option("--config", opt.config_path, "Job configuration JSON")
        ->required();
    sub->add_option("--out", opt.out_dir, "Output directory")->required();
    sub->add_flag("--force", opt.force,
                  "Write into a non-empty output directory");
    if (needs_seed)
      sub->add_option("--seed", seed_value,
                      "Override random seeds in the configuration");
  };

  CLI::App* plan = app.add_subcommand("plan", "Plan one trajectory");
  add_common(plan, true);
  CLI::App* simulate =
      app.add_subcommand("simulate", "Integrate a fixed maneuver schedule");
  add_common(simulate, false);
  CLI::App* sweep =
      app.add_subcommand("sweep", "Planner parameter sweep over scenarios");
  add_common(sweep, true);
  sweep->add_option("--jobs", opt.jobs, "Parallel scenario runs")
      ->check(CLI::PositiveNumber);
  CLI::App* compare = app.add_subcommand(
      "compare", "Tree-search planner versus sampling baseline");
  add_common(compare, true);
  CLI::App* perch =
      app.add_subcommand("perch", "Short-range descent study");
  add_common(perch, false);
  CLI::App* maneuvers = app.add_subcommand(
      "maneuvers", "Maneuver occurrence rates and set reduction");
  add_common(maneuvers, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("config", e.what());
    return kExitConfig;
  }

  for (CLI::App* sub : {plan, sweep, compare}) {
    if (sub->parsed() && sub->count("--seed")) opt.seed = seed_value;
  }

  try {
    const ornith::Vehicle vehicle = resolve_vehicle(opt);
    if (plan->parsed()) return cmd_plan(opt, vehicle);
    if (simulate->parsed()) return cmd_simulate(opt, vehicle);
    if (sweep->parsed()) return cmd_sweep(opt, vehicle);
    if (compare->parsed()) return cmd_compare(opt, vehicle);
    if (perch->parsed()) return cmd_perch(opt, vehicle);
    if (maneuvers->parsed()) return cmd_maneuvers(opt, vehicle);
    emit_error("config", "no subcommand");
    return kExitConfig;
  } catch (const ornith::NoSolutionError& e) {
    emit_error("no-solution", e.what(), e.best_distance);
    return kExitNoSolution;
  } catch (const ornith::DivergenceError& e) {
    emit_error("divergence", e.what());
    return kExitDivergence;
  } catch (const ornith::DegenerateStateError& e) {
    emit_error("divergence", e.what());
    return kExitDivergence;
  } catch (const ornith::ConfigError& e) {
    emit_error("config", e.what());
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    emit_error("config", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    emit_error("config", e.what());
    return kExitConfig;
  }
}
