#include "ornith/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <thread>

#include "ornith/errors.hpp"

namespace ornith {

std::vector<Maneuver> full_maneuver_set() {
  std::vector<Maneuver> out;
  for (int d = 0; d >= -6; --d)
    for (double f : {0.0, 4.0, 5.0, 6.0})
      out.push_back(Maneuver{static_cast<double>(d), f});
  return out;
}

std::vector<Maneuver> perch_maneuver_set() {
  std::vector<Maneuver> out;
  for (int d = -1; d >= -6; --d) out.push_back(Maneuver{static_cast<double>(d), 0.0});
  for (double f : {4.0, 5.0, 6.0}) out.push_back(Maneuver{0.0, f});
  return out;
}

namespace {

std::vector<double> axis_points(int n, double lo, double hi) {
  std::vector<double> pts;
  if (n <= 1) {
    pts.push_back(0.5 * (lo + hi));
    return pts;
  }
  for (int i = 0; i < n; ++i)
    pts.push_back(lo + (hi - lo) * i / (n - 1));
  return pts;
}

FlightState level_state_nd(double x_m, double z_m, double u0,
                           const CharacteristicScales& sc) {
  FlightState s;
  s.x = sc.to_nd_length(x_m);
  s.z = sc.to_nd_length(z_m);
  s.u = u0;
  return s;
}

std::string label_index(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%03d", prefix, i);
  return buf;
}

}  // namespace

std::vector<Scenario> generate_grid_scenarios(int count, const Rect& rect,
                                              const CharacteristicScales& sc,
                                              const ScenarioDefaults& d) {
  if (count < 1) throw ConfigError("scenario grid: count must be >= 1");
  if (!(rect.x_max >= rect.x_min) || !(rect.z_max >= rect.z_min))
    throw ConfigError("scenario grid: malformed rectangle");

  int cols = 1;
  for (int c = 1; c * c <= count; ++c)
    if (count % c == 0) cols = c;
  const int rows = count / cols;

  const std::vector<double> xs = axis_points(cols, rect.x_min, rect.x_max);
  const std::vector<double> zs = axis_points(rows, rect.z_min, rect.z_max);

  std::vector<Scenario> out;
  out.reserve(count);
  int i = 0;
  for (double x : xs)
    for (double z : zs) {
      Scenario s;
      s.label = label_index("grid", i++);
      s.start = level_state_nd(0.0, 0.0, d.u0, sc);
      s.target = level_state_nd(x, z, d.u0, sc);
      s.tolerance = d.tolerance;
      s.metric = d.metric;
      out.push_back(s);
    }
  return out;
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  double u01() { return (rng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
};

}  // namespace

std::vector<Scenario> generate_random_scenarios(
    int count, double x_range[2], double z_range[2], std::uint64_t seed,
    const CharacteristicScales& sc, const ScenarioDefaults& d) {
  if (count < 1) throw ConfigError("random scenarios: count must be >= 1");
  Sampler rnd(seed);
  std::vector<Scenario> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Scenario s;
    s.label = label_index("rand", i);
    s.start = level_state_nd(0.0, 0.0, d.u0, sc);
    s.target = level_state_nd(rnd.uniform(x_range[0], x_range[1]),
                              rnd.uniform(z_range[0], z_range[1]), d.u0, sc);
    s.tolerance = d.tolerance;
    s.metric = d.metric;
    out.push_back(s);
  }
  return out;
}

double accuracy(const FlightState& final_state, const FlightState& target,
                ToleranceMetric metric, const CharacteristicScales& sc) {
  return state_distance(final_state, target, metric, sc);
}

double precision_rate(const std::vector<RunRecord>& records) {
  if (records.empty()) return 0.0;
  std::size_t ok = 0;
  for (const RunRecord& r : records) ok += r.solved ? 1 : 0;
  return static_cast<double>(ok) / records.size();
}

MeanSem mean_sem(const std::vector<double>& values) {
  MeanSem ms;
  ms.n = values.size();
  if (values.empty()) return ms;
  double sum = 0.0;
  for (double v : values) sum += v;
  ms.mean = sum / values.size();
  if (values.size() < 2) return ms;
  double ss = 0.0;
  for (double v : values) ss += (v - ms.mean) * (v - ms.mean);
  ms.sem = std::sqrt(ss / (values.size() - 1)) / std::sqrt(double(values.size()));
  return ms;
}

std::map<Maneuver, double> occurrence_rates(
    const std::vector<Trajectory>& trajectories) {
  std::map<Maneuver, double> rates;
  std::size_t total = 0;
  for (const Trajectory& t : trajectories)
    for (const Segment& s : t.segments) {
      rates[s.maneuver] += 1.0;
      ++total;
    }
  if (total == 0) return rates;
  for (auto& [m, r] : rates) r /= static_cast<double>(total);
  return rates;
}

std::vector<Maneuver> reduce_maneuver_set(
    const std::map<Maneuver, double>& rates, double threshold) {
  std::vector<std::pair<Maneuver, double>> kept;
  for (const auto& [m, r] : rates)
    if (r >= threshold) kept.push_back({m, r});
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<Maneuver> out;
  out.reserve(kept.size());
  for (const auto& [m, r] : kept) out.push_back(m);
  return out;
}

namespace {

RunRecord run_tree_once(const Scenario& sce, const PlannerConfig& cfg,
                        const VehicleParams& p, const CharacteristicScales& sc) {
  RunRecord rec;
  rec.scenario = sce.label;
  rec.planner = "tree";
  PlannerConfig local = cfg;
  local.tolerance = sce.tolerance;
  local.metric = sce.metric;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Trajectory traj = plan(sce.start, sce.target, local, p, sc);
    rec.solved = true;
    rec.delta = accuracy(traj.final_state(), sce.target, sce.metric, sc);
    rec.energy_ws = traj.total_energy_ws;
    rec.trajectory = std::move(traj);
  } catch (const NoSolutionError& e) {
    rec.solved = false;
    rec.delta = e.best_distance;
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  rec.wall_s = dt.count();
  return rec;
}

void run_indexed(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
  };
  std::vector<std::thread> pool;
  const int k = std::min<int>(jobs, static_cast<int>(n));
  pool.reserve(k);
  for (int t = 0; t < k; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const VehicleParams& p,
                      const CharacteristicScales& sc) {
  if (spec.scenarios.empty())
    throw ConfigError("sweep: scenario list must not be empty");
  const bool multi = spec.parameter == "time_steps";
  if (!multi && spec.parameter != "t_s" && spec.parameter != "k_d" &&
      spec.parameter != "k_w")
    throw ConfigError("sweep: unknown parameter " + spec.parameter);
  const std::size_t n_values =
      multi ? spec.time_step_sets.size() : spec.values.size();
  if (n_values == 0) throw ConfigError("sweep: no parameter values");

  struct Job {
    std::size_t value_index;
    std::size_t scenario_index;
    PlannerConfig cfg;
    std::string label;
  };
  std::vector<Job> jobs;
  for (std::size_t vi = 0; vi < n_values; ++vi) {
    PlannerConfig cfg = spec.base;
    std::string label;
    char buf[64];
    if (multi) {
      cfg.time_steps = spec.time_step_sets[vi];
      label = "{";
      for (std::size_t i = 0; i < cfg.time_steps.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%g", cfg.time_steps[i]);
        label += (i ? " " : "") + std::string(buf);
      }
      label += "}";
    } else {
      const double v = spec.values[vi];
      std::snprintf(buf, sizeof buf, "%g", v);
      label = buf;
      if (spec.parameter == "t_s") cfg.time_steps = {v};
      else if (spec.parameter == "k_d") cfg.k_d = v;
      else cfg.k_w = static_cast<int>(v);
    }
    for (std::size_t si = 0; si < spec.scenarios.size(); ++si)
      jobs.push_back(Job{vi, si, cfg, label});
  }

  SweepResult result;
  result.records.resize(jobs.size());
  run_indexed(jobs.size(), spec.jobs, [&](std::size_t i) {
    const Job& job = jobs[i];
    RunRecord rec = run_tree_once(spec.scenarios[job.scenario_index], job.cfg, p, sc);
    rec.planner = "tree[" + spec.parameter + "=" + job.label + "]";
    result.records[i] = std::move(rec);
  });

  for (std::size_t vi = 0; vi < n_values; ++vi) {
    SweepRow row;
    std::vector<double> deltas, energies, walls;
    std::size_t count = 0, solved = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].value_index != vi) continue;
      const RunRecord& r = result.records[i];
      row.value_label = jobs[i].label;
      ++count;
      walls.push_back(r.wall_s);
      if (r.solved) {
        ++solved;
        deltas.push_back(r.delta);
        energies.push_back(r.energy_ws);
      }
    }
    row.delta = mean_sem(deltas);
    row.energy = mean_sem(energies);
    row.wall = mean_sem(walls);
    row.solved_rate = count ? static_cast<double>(solved) / count : 0.0;
    result.summary.push_back(row);
  }
  return result;
}

ComparisonReport run_comparison(const ComparisonSpec& spec,
                                const VehicleParams& p,
                                const CharacteristicScales& sc) {
  if (spec.scenarios.empty())
    throw ConfigError("comparison: scenario list must not be empty");
  if (spec.rrt.empty())
    throw ConfigError("comparison: need at least one rrt configuration");

  ComparisonReport report;
  const double half = spec.goal_half_side_m;
  auto in_square = [&](const FlightState& s, const FlightState& target) {
    return std::abs(sc.to_m(s.x - target.x)) <= half &&
           std::abs(sc.to_m(s.z - target.z)) <= half;
  };

  struct PlannerRows {
    std::string label;
    std::vector<RunRecord> rows;
  };
  std::vector<PlannerRows> tables(1 + spec.rrt.size());
  tables[0].label = "tree";
  for (std::size_t ri = 0; ri < spec.rrt.size(); ++ri) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "aorrt_cs%g", spec.rrt[ri].control_step_s);
    tables[1 + ri].label = buf;
  }

  for (const Scenario& sce : spec.scenarios) {
    PlannerConfig tree_cfg = spec.tree;
    tree_cfg.tolerance = std::min(sce.tolerance, half);
    tree_cfg.metric = ToleranceMetric::kPositionOnly;

    RunRecord tree_rec;
    tree_rec.scenario = sce.label;
    tree_rec.planner = "tree";
    WaypointCloud tree_cloud{"tree", sce.label, {}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const PlanTree tree = build_tree(sce.start, sce.target, tree_cfg, p, sc);
      for (const PlanNode& n : tree.nodes)
        tree_cloud.points_m.push_back({sc.to_m(n.state.x), sc.to_m(n.state.z)});
      Trajectory traj =
          extract_optimal_path(tree, sce.start, sce.target, tree_cfg, sc);
      tree_rec.solved = in_square(traj.final_state(), sce.target);
      tree_rec.delta = accuracy(traj.final_state(), sce.target,
                                ToleranceMetric::kPositionOnly, sc);
      tree_rec.energy_ws = traj.total_energy_ws;
      tree_rec.trajectory = std::move(traj);
    } catch (const NoSolutionError& e) {
      tree_rec.solved = false;
      tree_rec.delta = e.best_distance;
    }
    const std::chrono::duration<double> tree_dt =
        std::chrono::steady_clock::now() - t0;
    tree_rec.wall_s = tree_dt.count();
    tables[0].rows.push_back(tree_rec);
    report.clouds.push_back(std::move(tree_cloud));

    for (std::size_t ri = 0; ri < spec.rrt.size(); ++ri) {
      RrtConfig rrt_cfg = spec.rrt[ri];
      if (spec.match_budget) {
        rrt_cfg.time_budget_s = std::max(tree_rec.wall_s, 1e-3);
        rrt_cfg.max_iterations = 0;
      }
      rrt_cfg.goal_half_side_m = half;
      if (rrt_cfg.bounds.x_min == rrt_cfg.bounds.x_max)
        rrt_cfg.bounds = default_sample_bounds(sce.start, sce.target, sc);

      RunRecord rec;
      rec.scenario = sce.label;
      rec.planner = tables[1 + ri].label;
      WaypointCloud cloud{rec.planner, sce.label, {}};
      const auto r0 = std::chrono::steady_clock::now();
      try {
        RrtResult res = aorrt_plan(sce.start, sce.target, rrt_cfg, p, sc);
        for (const RrtNode& n : res.nodes)
          cloud.points_m.push_back({sc.to_m(n.state.x), sc.to_m(n.state.z)});
        rec.solved = in_square(res.trajectory.final_state(), sce.target);
        rec.delta = accuracy(res.trajectory.final_state(), sce.target,
                             ToleranceMetric::kPositionOnly, sc);
        rec.energy_ws = res.trajectory.total_energy_ws;
        rec.trajectory = std::move(res.trajectory);
      } catch (const NoSolutionError& e) {
        rec.solved = false;
        rec.delta = e.best_distance;
      }
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - r0;
      rec.wall_s = dt.count();
      tables[1 + ri].rows.push_back(rec);
      report.clouds.push_back(std::move(cloud));
    }
  }

  for (const PlannerRows& table : tables) {
    ComparisonReport::PlannerSummary s;
    s.planner = table.label;
    std::size_t ok = 0;
    std::vector<double> joint_energy;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      ok += table.rows[i].solved ? 1 : 0;
      if (table.rows[i].solved && tables[0].rows[i].solved)
        joint_energy.push_back(table.rows[i].energy_ws);
    }
    s.precision = table.rows.empty()
                      ? 0.0
                      : static_cast<double>(ok) / table.rows.size();
    s.energy_joint = mean_sem(joint_energy);
    s.joint_count = joint_energy.size();
    report.summary.push_back(s);
    for (const RunRecord& r : table.rows) report.records.push_back(r);
  }
  return report;
}

std::vector<PerchRecord> run_perching(const PerchSpec& spec,
                                      const VehicleParams& p,
                                      const CharacteristicScales& sc) {
  PlannerConfig cfg;
  cfg.maneuver_set =
      spec.maneuver_set.empty() ? perch_maneuver_set() : spec.maneuver_set;
  cfg.time_steps = {spec.time_step_s};
  cfg.k_d = spec.k_d;
  cfg.k_w = spec.k_w;
  cfg.tolerance = spec.tolerance_m;
  cfg.metric = ToleranceMetric::kPositionOnly;
  cfg.accept_overshoot = spec.accept_overshoot;

  double max_delta = 0.0;
  for (const Maneuver& m : cfg.maneuver_set)
    max_delta = std::max(max_delta, std::abs(m.delta_deg));

  std::vector<PerchRecord> out;
  for (double alt : spec.altitudes_m) {
    PerchRecord rec;
    rec.altitude_m = alt;
    FlightState start = level_state_nd(0.0, 0.0, spec.u0, sc);
    start.w = spec.w0;
    FlightState target = level_state_nd(spec.ahead_m, alt, spec.u0, sc);

    const auto t0 = std::chrono::steady_clock::now();
    try {
      Trajectory traj = plan(start, target, cfg, p, sc);
      rec.solved = true;
      rec.error_m = accuracy(traj.final_state(), target,
                             ToleranceMetric::kPositionOnly, sc);
      const std::size_t n = traj.segments.size();
      if (n >= 1) {
        const Segment& last = traj.segments[n - 1];
        rec.flare_pattern = last.maneuver.gliding() &&
                            std::abs(last.maneuver.delta_deg) == max_delta;
        if (n >= 2)
          rec.flare_pattern =
              rec.flare_pattern && traj.segments[n - 2].maneuver.gliding();
      }
      rec.trajectory = std::move(traj);
    } catch (const NoSolutionError& e) {
      rec.solved = false;
      rec.error_m = e.best_distance;
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    rec.wall_s = dt.count();
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

void append_g(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::string out = "scenario,planner,solved,delta,energy_ws,wall_s\n";
  for (const RunRecord& r : records) {
    out += r.scenario + "," + r.planner + ",";
    out += r.solved ? '1' : '0';
    out += ',';
    append_g(out, r.delta);
    out += ',';
    append_g(out, r.energy_ws);
    out += ',';
    append_g(out, r.wall_s);
    out += '\n';
  }
  return out;
}

std::string sweep_summary_to_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "value,solved_rate,delta_mean,delta_sem,energy_mean,energy_sem,"
      "wall_mean,wall_sem\n";
  for (const SweepRow& r : rows) {
    out += r.value_label + ",";
    append_g(out, r.solved_rate);
    out += ',';
    append_g(out, r.delta.mean);
    out += ',';
    append_g(out, r.delta.sem);
    out += ',';
    append_g(out, r.energy.mean);
    out += ',';
    append_g(out, r.energy.sem);
    out += ',';
    append_g(out, r.wall.mean);
    out += ',';
    append_g(out, r.wall.sem);
    out += '\n';
  }
  return out;
}

std::string clouds_to_csv(const std::vector<WaypointCloud>& clouds) {
  std::string out = "planner,scenario,x_m,z_m\n";
  for (const WaypointCloud& c : clouds)
    for (const auto& [x, z] : c.points_m) {
      out += c.planner + "," + c.scenario + ",";
      append_g(out, x);
      out += ',';
      append_g(out, z);
      out += '\n';
    }
  return out;
}

std::string rates_to_csv(const std::map<Maneuver, double>& rates) {
  std::string out = "delta_deg,f_hz,rate\n";
  for (const auto& [m, r] : rates) {
    append_g(out, m.delta_deg);
    out += ',';
    append_g(out, m.f_hz);
    out += ',';
    append_g(out, r);
    out += '\n';
  }
  return out;
}

}  // namespace ornith
