#include "config_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ornith/errors.hpp"

namespace cli {

using nlohmann::json;
using namespace ornith;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void reject_unknown(const json& j, const char* where) {
  if (!j.empty())
    fail(std::string(where) + ": unknown key '" + j.begin().key() + "'");
}

json take(json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return json();
  json v = *it;
  j.erase(it);
  return v;
}

double take_number(json& j, const char* key, double fallback) {
  json v = take(j, key);
  if (v.is_null()) return fallback;
  if (!v.is_number()) fail(std::string(key) + ": expected a number");
  return v.get<double>();
}

int take_int(json& j, const char* key, int fallback) {
  json v = take(j, key);
  if (v.is_null()) return fallback;
  if (!v.is_number_integer()) fail(std::string(key) + ": expected an integer");
  return v.get<int>();
}

bool take_bool(json& j, const char* key, bool fallback) {
  json v = take(j, key);
  if (v.is_null()) return fallback;
  if (!v.is_boolean()) fail(std::string(key) + ": expected a boolean");
  return v.get<bool>();
}

std::string take_string(json& j, const char* key, const std::string& fallback) {
  json v = take(j, key);
  if (v.is_null()) return fallback;
  if (!v.is_string()) fail(std::string(key) + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> take_number_list(json& j, const char* key,
                                     std::vector<double> fallback) {
  json v = take(j, key);
  if (v.is_null()) return fallback;
  if (!v.is_array()) fail(std::string(key) + ": expected an array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) fail(std::string(key) + ": expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

/// Corridor radius and similar: a number, or "inf" to disable the bound.
double take_radius(json& j, const char* key, double fallback) {
  json v = take(j, key);
  if (v.is_null()) return fallback;
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInf;
    fail(std::string(key) + ": expected a number or \"inf\"");
  }
  if (!v.is_number()) fail(std::string(key) + ": expected a number or \"inf\"");
  return v.get<double>();
}

ToleranceMetric parse_metric(const std::string& name) {
  if (name == "position-only") return ToleranceMetric::kPositionOnly;
  if (name == "full-state") return ToleranceMetric::kFullState;
  fail("metric: expected \"position-only\" or \"full-state\"");
}

}  // namespace

Maneuver parse_maneuver(const json& in) {
  if (!in.is_object()) fail("maneuver: expected an object");
  json j = in;
  Maneuver m;
  json d = take(j, "delta_deg"), f = take(j, "f_hz");
  if (!d.is_number() || !f.is_number())
    fail("maneuver: delta_deg and f_hz are required numbers");
  m.delta_deg = d.get<double>();
  m.f_hz = f.get<double>();
  if (m.f_hz < 0.0) fail("maneuver: f_hz must be >= 0");
  reject_unknown(j, "maneuver");
  return m;
}

std::vector<Maneuver> parse_maneuver_set(const json& j) {
  if (!j.is_array() || j.empty())
    fail("maneuver_set: expected a non-empty array");
  std::vector<Maneuver> out;
  for (const json& e : j) out.push_back(parse_maneuver(e));
  return out;
}

EnergyModel parse_energy(const json& in) {
  if (!in.is_object()) fail("energy: expected an object");
  json j = in;
  EnergyModel em;
  em.K_aero = take_number(j, "K_aero", em.K_aero);
  em.c_r = take_number(j, "c_r", em.c_r);
  reject_unknown(j, "energy");
  em.validate();
  return em;
}

IntegratorConfig parse_integrator(const json& in) {
  if (!in.is_object()) fail("integrator: expected an object");
  json j = in;
  IntegratorConfig cfg;
  cfg.max_substep_s = take_number(j, "max_substep_s", cfg.max_substep_s);
  cfg.steps_per_flap_period =
      take_int(j, "steps_per_flap_period", cfg.steps_per_flap_period);
  cfg.substeps_override = take_int(j, "substeps_override", cfg.substeps_override);
  const std::string mode = take_string(j, "alpha_dot_mode", "consistent");
  if (mode == "consistent") cfg.alpha_dot_mode = AlphaDotMode::kConsistent;
  else if (mode == "lagged") cfg.alpha_dot_mode = AlphaDotMode::kLagged;
  else fail("alpha_dot_mode: expected \"consistent\" or \"lagged\"");
  reject_unknown(j, "integrator");
  if (cfg.max_substep_s <= 0.0) fail("max_substep_s must be > 0");
  if (cfg.steps_per_flap_period < 1) fail("steps_per_flap_period must be >= 1");
  return cfg;
}

PlannerConfig parse_planner(const json& in) {
  if (!in.is_object()) fail("planner: expected an object");
  json j = in;
  PlannerConfig cfg;
  json ms = take(j, "maneuver_set");
  cfg.maneuver_set = ms.is_null() ? full_maneuver_set() : parse_maneuver_set(ms);
  cfg.time_steps = take_number_list(j, "time_steps", cfg.time_steps);
  cfg.k_d = take_radius(j, "k_d", cfg.k_d);
  cfg.k_w = take_int(j, "k_w", cfg.k_w);
  cfg.tolerance = take_number(j, "tolerance", cfg.tolerance);
  cfg.metric = parse_metric(take_string(j, "metric", "position-only"));
  cfg.max_depth = take_int(j, "max_depth", cfg.max_depth);
  const std::string part = take_string(j, "partition_mode", "equal-width");
  if (part == "equal-width") cfg.partition_mode = PartitionMode::kEqualWidth;
  else if (part == "quantile") cfg.partition_mode = PartitionMode::kQuantile;
  else fail("partition_mode: expected \"equal-width\" or \"quantile\"");
  cfg.accept_overshoot = take_bool(j, "accept_overshoot", cfg.accept_overshoot);
  json energy = take(j, "energy");
  if (!energy.is_null()) cfg.energy = parse_energy(energy);
  json integ = take(j, "integrator");
  if (!integ.is_null()) cfg.integrator = parse_integrator(integ);
  reject_unknown(j, "planner");
  return cfg;
}

RrtConfig parse_rrt(const json& in) {
  if (!in.is_object()) fail("rrt: expected an object");
  json j = in;
  RrtConfig cfg;
  json ms = take(j, "maneuver_set");
  cfg.maneuver_set = ms.is_null() ? full_maneuver_set() : parse_maneuver_set(ms);
  cfg.control_step_s = take_number(j, "control_step_s", cfg.control_step_s);
  cfg.time_budget_s = take_number(j, "time_budget_s", cfg.time_budget_s);
  cfg.max_iterations = static_cast<std::int64_t>(
      take_number(j, "max_iterations", static_cast<double>(cfg.max_iterations)));
  cfg.goal_half_side_m = take_number(j, "goal_half_side_m", cfg.goal_half_side_m);
  json b = take(j, "bounds");
  if (!b.is_null()) {
    if (!b.is_object()) fail("bounds: expected an object");
    cfg.bounds.x_min = take_number(b, "x_min", cfg.bounds.x_min);
    cfg.bounds.x_max = take_number(b, "x_max", cfg.bounds.x_max);
    cfg.bounds.z_min = take_number(b, "z_min", cfg.bounds.z_min);
    cfg.bounds.z_max = take_number(b, "z_max", cfg.bounds.z_max);
    cfg.bounds.u_min = take_number(b, "u_min", cfg.bounds.u_min);
    cfg.bounds.u_max = take_number(b, "u_max", cfg.bounds.u_max);
    cfg.bounds.w_min = take_number(b, "w_min", cfg.bounds.w_min);
    cfg.bounds.w_max = take_number(b, "w_max", cfg.bounds.w_max);
    cfg.bounds.theta_min = take_number(b, "theta_min", cfg.bounds.theta_min);
    cfg.bounds.theta_max = take_number(b, "theta_max", cfg.bounds.theta_max);
    cfg.bounds.q_min = take_number(b, "q_min", cfg.bounds.q_min);
    cfg.bounds.q_max = take_number(b, "q_max", cfg.bounds.q_max);
    reject_unknown(b, "bounds");
  }
  json w = take(j, "weights");
  if (!w.is_null()) {
    if (!w.is_object()) fail("weights: expected an object");
    cfg.weights.cost = take_number(w, "cost", cfg.weights.cost);
    cfg.weights.x = take_number(w, "x", cfg.weights.x);
    cfg.weights.z = take_number(w, "z", cfg.weights.z);
    cfg.weights.u = take_number(w, "u", cfg.weights.u);
    cfg.weights.w = take_number(w, "w", cfg.weights.w);
    cfg.weights.theta = take_number(w, "theta", cfg.weights.theta);
    cfg.weights.q = take_number(w, "q", cfg.weights.q);
    reject_unknown(w, "weights");
  }
  cfg.cost_bound_ws = take_number(j, "cost_bound_ws", cfg.cost_bound_ws);
  cfg.cost_scale = take_number(j, "cost_scale", cfg.cost_scale);
  cfg.length_scale = take_number(j, "length_scale", cfg.length_scale);
  cfg.seed = static_cast<std::uint64_t>(
      take_number(j, "seed", static_cast<double>(cfg.seed)));
  json energy = take(j, "energy");
  if (!energy.is_null()) cfg.energy = parse_energy(energy);
  json integ = take(j, "integrator");
  if (!integ.is_null()) cfg.integrator = parse_integrator(integ);
  reject_unknown(j, "rrt");
  return cfg;
}

namespace {

FlightState level_state(double x_m, double z_m, double u0,
                        const CharacteristicScales& sc) {
  FlightState s;
  s.x = sc.to_nd_length(x_m);
  s.z = sc.to_nd_length(z_m);
  s.u = u0;
  return s;
}

std::pair<double, double> take_xy(json& j, const char* key, double fx, double fz) {
  json v = take(j, key);
  if (v.is_null()) return {fx, fz};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(std::string(key) + ": expected [x, z] in meters");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

Scenario parse_scenario(const json& in, const CharacteristicScales& sc,
                        const std::string& fallback_label) {
  if (!in.is_object()) fail("scenario: expected an object");
  json j = in;
  Scenario s;
  s.label = take_string(j, "label", fallback_label);
  const double u0 = take_number(j, "u0", 1.0);
  auto [tx, tz] = take_xy(j, "target_m", kInf, kInf);
  if (tx == kInf) fail("scenario: target_m is required");
  auto [sx, sz] = take_xy(j, "start_m", 0.0, 0.0);
  s.start = level_state(sx, sz, u0, sc);
  s.target = level_state(tx, tz, u0, sc);
  s.tolerance = take_number(j, "tolerance", s.tolerance);
  s.metric = parse_metric(take_string(j, "metric", "position-only"));
  reject_unknown(j, "scenario");
  return s;
}

std::vector<Scenario> parse_scenarios(const json& in,
                                      const CharacteristicScales& sc,
                                      std::optional<std::uint64_t> seed_override) {
  if (!in.is_object()) fail("scenarios: expected an object");
  json j = in;

  ScenarioDefaults d;
  d.u0 = take_number(j, "u0", d.u0);
  d.tolerance = take_number(j, "tolerance", d.tolerance);
  d.metric = parse_metric(take_string(j, "metric", "position-only"));

  json list = take(j, "list");
  json grid = take(j, "grid");
  json random = take(j, "random");
  reject_unknown(j, "scenarios");
  const int sources =
      (!list.is_null()) + (!grid.is_null()) + (!random.is_null());
  if (sources != 1)
    fail("scenarios: give exactly one of list, grid, random");

  if (!list.is_null()) {
    if (!list.is_array() || list.empty())
      fail("scenarios.list: expected a non-empty array");
    std::vector<Scenario> out;
    int i = 0;
    for (const json& e : list) {
      char label[32];
      std::snprintf(label, sizeof label, "s_%03d", i++);
      out.push_back(parse_scenario(e, sc, label));
    }
    return out;
  }

  if (!grid.is_null()) {
    if (!grid.is_object()) fail("scenarios.grid: expected an object");
    const int count = take_int(grid, "count", 80);
    Rect rect;
    json r = take(grid, "rect");
    if (!r.is_null()) {
      if (!r.is_array() || r.size() != 4)
        fail("grid.rect: expected [x_min, x_max, z_min, z_max]");
      rect.x_min = r[0].get<double>();
      rect.x_max = r[1].get<double>();
      rect.z_min = r[2].get<double>();
      rect.z_max = r[3].get<double>();
    }
    reject_unknown(grid, "scenarios.grid");
    return generate_grid_scenarios(count, rect, sc, d);
  }

  if (!random.is_object()) fail("scenarios.random: expected an object");
  const int count = take_int(random, "count", 20);
  std::vector<double> xr =
      take_number_list(random, "x_range", {150.0, 250.0});
  std::vector<double> zr = take_number_list(random, "z_range", {0.0, 100.0});
  if (xr.size() != 2 || zr.size() != 2)
    fail("scenarios.random: x_range and z_range are [lo, hi]");
  std::uint64_t seed = static_cast<std::uint64_t>(
      take_number(random, "seed", 1.0));
  if (seed_override) seed = *seed_override;
  reject_unknown(random, "scenarios.random");
  double xrange[2] = {xr[0], xr[1]}, zrange[2] = {zr[0], zr[1]};
  return generate_random_scenarios(count, xrange, zrange, seed, sc, d);
}

PlanJob parse_plan_job(const json& in, const CharacteristicScales& sc) {
  if (!in.is_object()) fail("plan config: expected an object");
  json j = in;
  PlanJob job;
  json planner = take(j, "planner");
  if (!planner.is_null()) job.planner = parse_planner(planner);
  else job.planner.maneuver_set = full_maneuver_set();
  json scenario = take(j, "scenario");
  if (scenario.is_null()) fail("plan config: scenario is required");
  job.scenario = parse_scenario(scenario, sc, "plan");
  reject_unknown(j, "plan config");
  return job;
}

SimulateJob parse_simulate_job(const json& in, const CharacteristicScales& sc) {
  if (!in.is_object()) fail("simulate config: expected an object");
  json j = in;
  SimulateJob job;
  json st = take(j, "start");
  if (!st.is_null()) {
    if (!st.is_object()) fail("start: expected an object");
    job.start.x = sc.to_nd_length(take_number(st, "x_m", 0.0));
    job.start.z = sc.to_nd_length(take_number(st, "z_m", 0.0));
    job.start.u = take_number(st, "u", 1.0);
    job.start.w = take_number(st, "w", 0.0);
    job.start.theta = take_number(st, "theta", 0.0);
    job.start.q = take_number(st, "q", 0.0);
    reject_unknown(st, "start");
  } else {
    job.start.u = 1.0;
  }
  json sched = take(j, "schedule");
  if (!sched.is_array() || sched.empty())
    fail("simulate config: schedule must be a non-empty array");
  for (const json& e : sched) {
    if (!e.is_object()) fail("schedule: expected objects");
    json s = e;
    Maneuver m;
    m.delta_deg = take_number(s, "delta_deg", 0.0);
    m.f_hz = take_number(s, "f_hz", 0.0);
    const double dur = take_number(s, "duration_s", -1.0);
    reject_unknown(s, "schedule entry");
    if (dur <= 0.0) fail("schedule: duration_s must be > 0");
    if (m.f_hz < 0.0) fail("schedule: f_hz must be >= 0");
    job.schedule.push_back({m, dur});
  }
  json integ = take(j, "integrator");
  if (!integ.is_null()) job.integrator = parse_integrator(integ);
  reject_unknown(j, "simulate config");
  return job;
}

SweepSpec parse_sweep_spec(const json& in, const CharacteristicScales& sc,
                           std::optional<std::uint64_t> seed_override,
                           int jobs) {
  if (!in.is_object()) fail("sweep config: expected an object");
  json j = in;
  SweepSpec spec;
  spec.parameter = take_string(j, "parameter", "");
  if (spec.parameter.empty()) fail("sweep config: parameter is required");
  spec.values = take_number_list(j, "values", {});
  json sets = take(j, "time_step_sets");
  if (!sets.is_null()) {
    if (!sets.is_array()) fail("time_step_sets: expected an array of arrays");
    for (const json& e : sets) {
      if (!e.is_array() || e.empty())
        fail("time_step_sets: expected non-empty arrays");
      std::vector<double> one;
      for (const json& v : e) one.push_back(v.get<double>());
      spec.time_step_sets.push_back(one);
    }
  }
  json planner = take(j, "planner");
  if (!planner.is_null()) spec.base = parse_planner(planner);
  else spec.base.maneuver_set = full_maneuver_set();
  json scenarios = take(j, "scenarios");
  if (scenarios.is_null()) fail("sweep config: scenarios is required");
  spec.scenarios = parse_scenarios(scenarios, sc, seed_override);
  spec.jobs = jobs;
  reject_unknown(j, "sweep config");
  return spec;
}

ComparisonSpec parse_comparison_spec(const json& in,
                                     const CharacteristicScales& sc,
                                     std::optional<std::uint64_t> seed_override) {
  if (!in.is_object()) fail("compare config: expected an object");
  json j = in;
  ComparisonSpec spec;
  json planner = take(j, "planner");
  if (!planner.is_null()) spec.tree = parse_planner(planner);
  else spec.tree.maneuver_set = full_maneuver_set();

  RrtConfig base;
  json rrt = take(j, "rrt");
  if (!rrt.is_null()) base = parse_rrt(rrt);
  else base.maneuver_set = full_maneuver_set();
  std::vector<double> steps =
      take_number_list(j, "control_steps", {base.control_step_s});
  for (std::size_t i = 0; i < steps.size(); ++i) {
    RrtConfig cfg = base;
    cfg.control_step_s = steps[i];
    if (seed_override) cfg.seed = *seed_override + i;
    spec.rrt.push_back(cfg);
  }

  spec.match_budget = take_bool(j, "match_budget", spec.match_budget);
  spec.goal_half_side_m =
      take_number(j, "goal_half_side_m", spec.goal_half_side_m);
  json scenarios = take(j, "scenarios");
  if (scenarios.is_null()) fail("compare config: scenarios is required");
  spec.scenarios = parse_scenarios(scenarios, sc, seed_override);
  reject_unknown(j, "compare config");
  return spec;
}

PerchSpec parse_perch_spec(const json& in) {
  if (!in.is_object()) fail("perch config: expected an object");
  json j = in;
  PerchSpec spec;
  spec.altitudes_m = take_number_list(j, "altitudes_m", spec.altitudes_m);
  spec.ahead_m = take_number(j, "ahead_m", spec.ahead_m);
  json ms = take(j, "maneuver_set");
  if (!ms.is_null()) spec.maneuver_set = parse_maneuver_set(ms);
  spec.time_step_s = take_number(j, "time_step_s", spec.time_step_s);
  spec.k_d = take_radius(j, "k_d", spec.k_d);
  spec.k_w = take_int(j, "k_w", spec.k_w);
  spec.tolerance_m = take_number(j, "tolerance_m", spec.tolerance_m);
  spec.u0 = take_number(j, "u0", spec.u0);
  spec.w0 = take_number(j, "w0", spec.w0);
  spec.accept_overshoot =
      take_bool(j, "accept_overshoot", spec.accept_overshoot);
  reject_unknown(j, "perch config");
  return spec;
}

ManeuversJob parse_maneuvers_job(const json& in) {
  if (!in.is_object()) fail("maneuvers config: expected an object");
  json j = in;
  ManeuversJob job;
  json t = take(j, "trajectories");
  if (!t.is_null()) {
    if (!t.is_array()) fail("trajectories: expected an array of paths");
    for (const json& e : t) {
      if (!e.is_string()) fail("trajectories: expected strings");
      job.trajectory_paths.push_back(e.get<std::string>());
    }
  }
  job.trajectory_dir = take_string(j, "trajectory_dir", "");
  job.rates_file = take_string(j, "rates_file", "");
  job.threshold = take_number(j, "threshold", 0.0);
  reject_unknown(j, "maneuvers config");
  const int sources = (!job.trajectory_paths.empty()) +
                      (!job.trajectory_dir.empty()) + (!job.rates_file.empty());
  if (sources != 1)
    fail("maneuvers config: give exactly one of trajectories, "
         "trajectory_dir, rates_file");
  if (job.threshold < 0.0) fail("maneuvers config: threshold must be >= 0");
  return job;
}

std::map<Maneuver, double> read_rates_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open rates file: " + path);
  std::map<Maneuver, double> rates;
  std::string line;
  if (!std::getline(in, line) || line != "delta_deg,f_hz,rate")
    fail("rates file: expected header delta_deg,f_hz,rate");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') ||
        !std::getline(row, c))
      fail("rates file: malformed line " + std::to_string(lineno));
    try {
      Maneuver m{std::stod(a), std::stod(b)};
      rates[m] = std::stod(c);
    } catch (const std::exception&) {
      fail("rates file: non-numeric value on line " + std::to_string(lineno));
    }
  }
  return rates;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail("malformed JSON in " + path);
  return j;
}

}  // namespace cli
