#include "ornith/aorrt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "ornith/errors.hpp"

namespace ornith {

StateBounds default_sample_bounds(const FlightState& start,
                                  const FlightState& target,
                                  const CharacteristicScales& sc) {
  StateBounds b;
  const double margin = sc.to_nd_length(10.0);
  b.x_min = std::min(start.x, target.x) - margin;
  b.x_max = std::max(start.x, target.x) + margin;
  const double z_margin = sc.to_nd_length(30.0);
  b.z_min = std::min(start.z, target.z) - z_margin;
  b.z_max = std::max(start.z, target.z) + z_margin;
  return b;
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  // Fixed scaling of the raw 64-bit stream keeps sequences identical across
  // standard library implementations.
  double u01() { return (rng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
  std::size_t index(std::size_t n) {
    return std::min<std::size_t>(static_cast<std::size_t>(u01() * n), n - 1);
  }
};

double max_power(const std::vector<Maneuver>& set, const EnergyModel& em) {
  double p = em.c_r;
  for (const Maneuver& m : set)
    p = std::max(p, em.K_aero * m.f_hz * m.f_hz * m.f_hz + em.c_r);
  return p;
}

struct Metric {
  MetricWeights w;
  double cost_scale = 1.0;
  double length_scale = 1.0;

  double sq(double v) const { return v * v; }
  double distance2(double cost_a, const FlightState& a, double cost_b,
                   const FlightState& b) const {
    return w.cost * sq((cost_a - cost_b) / cost_scale) +
           w.x * sq((a.x - b.x) / length_scale) +
           w.z * sq((a.z - b.z) / length_scale) + w.u * sq(a.u - b.u) +
           w.w * sq(a.w - b.w) + w.theta * sq(a.theta - b.theta) +
           w.q * sq(a.q - b.q);
  }
};

}  // namespace

RrtResult aorrt_plan(const FlightState& start, const FlightState& target,
                     const RrtConfig& cfg, const VehicleParams& p,
                     const CharacteristicScales& sc) {
  if (cfg.maneuver_set.empty())
    throw ConfigError("aorrt: maneuver set must not be empty");
  if (!(cfg.control_step_s > 0.0))
    throw ConfigError("aorrt: control step must be positive");
  if (cfg.time_budget_s <= 0.0 && cfg.max_iterations <= 0)
    throw ConfigError("aorrt: need a time budget or an iteration bound");
  cfg.energy.validate();

  const double power = max_power(cfg.maneuver_set, cfg.energy);
  const double crossing_s =
      3.0 * std::abs(sc.to_m(target.x - start.x)) / sc.U_c + cfg.control_step_s;
  const double cost_bound =
      cfg.cost_bound_ws > 0.0 ? cfg.cost_bound_ws : power * crossing_s;

  Metric metric;
  metric.w = cfg.weights;
  metric.cost_scale = cfg.cost_scale > 0.0 ? cfg.cost_scale
                                           : power * cfg.control_step_s;
  if (cfg.length_scale > 0.0) {
    metric.length_scale = cfg.length_scale;
  } else {
    metric.length_scale = std::max(
        {cfg.bounds.x_max - cfg.bounds.x_min,
         cfg.bounds.z_max - cfg.bounds.z_min, 1.0});
  }

  Sampler rnd(cfg.seed);
  std::vector<RrtNode> nodes;
  nodes.push_back(RrtNode{start, -1, -1, 0.0});

  const double half_side_nd = sc.to_nd_length(cfg.goal_half_side_m);
  auto in_goal = [&](const FlightState& s) {
    return std::abs(s.x - target.x) <= half_side_nd &&
           std::abs(s.z - target.z) <= half_side_nd;
  };
  auto goal_distance_m = [&](const FlightState& s) {
    const double dx = sc.to_m(s.x - target.x);
    const double dz = sc.to_m(s.z - target.z);
    return std::sqrt(dx * dx + dz * dz);
  };

  const auto t0 = std::chrono::steady_clock::now();
  auto expired = [&]() {
    if (cfg.time_budget_s <= 0.0) return false;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return dt.count() >= cfg.time_budget_s;
  };

  std::int64_t it = 0;
  while ((cfg.max_iterations <= 0 || it < cfg.max_iterations) && !expired()) {
    ++it;
    const double c_s = rnd.uniform(0.0, cost_bound);
    FlightState s_s;
    s_s.x = rnd.uniform(cfg.bounds.x_min, cfg.bounds.x_max);
    s_s.z = rnd.uniform(cfg.bounds.z_min, cfg.bounds.z_max);
    s_s.u = rnd.uniform(cfg.bounds.u_min, cfg.bounds.u_max);
    s_s.w = rnd.uniform(cfg.bounds.w_min, cfg.bounds.w_max);
    s_s.theta = rnd.uniform(cfg.bounds.theta_min, cfg.bounds.theta_max);
    s_s.q = rnd.uniform(cfg.bounds.q_min, cfg.bounds.q_max);
    const std::size_t mi = rnd.index(cfg.maneuver_set.size());

    std::size_t nearest = 0;
    double best_d2 = metric.distance2(c_s, s_s, nodes[0].accumulated_energy,
                                      nodes[0].state);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const double d2 = metric.distance2(c_s, s_s, nodes[i].accumulated_energy,
                                         nodes[i].state);
      if (d2 < best_d2) {
        best_d2 = d2;
        nearest = i;
      }
    }

    const Maneuver& m = cfg.maneuver_set[mi];
    FlightState end;
    try {
      end = integrate(nodes[nearest].state, m, cfg.control_step_s, p, sc,
                      cfg.integrator);
    } catch (const DivergenceError&) {
      continue;
    } catch (const DegenerateStateError&) {
      continue;
    }

    RrtNode child;
    child.state = end;
    child.parent = static_cast<std::int32_t>(nearest);
    child.maneuver_index = static_cast<std::int32_t>(mi);
    child.accumulated_energy =
        nodes[nearest].accumulated_energy +
        maneuver_energy(m, cfg.control_step_s, cfg.energy);
    nodes.push_back(child);
  }

  std::int32_t best = -1;
  double best_goal = std::numeric_limits<double>::infinity();
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(nodes.size()); ++i) {
    best_goal = std::min(best_goal, goal_distance_m(nodes[i].state));
    if (!in_goal(nodes[i].state)) continue;
    if (best < 0 ||
        nodes[i].accumulated_energy < nodes[best].accumulated_energy)
      best = i;
  }
  if (best < 0)
    throw NoSolutionError("rrt: no node inside the goal square", best_goal);

  std::vector<std::int32_t> chain;
  for (std::int32_t i = best; i >= 0; i = nodes[i].parent) chain.push_back(i);
  std::reverse(chain.begin(), chain.end());

  RrtResult res;
  res.iterations = it;
  res.trajectory.planner = "aorrt";
  res.trajectory.start = start;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const RrtNode& n = nodes[chain[i]];
    Segment seg;
    seg.maneuver = cfg.maneuver_set[n.maneuver_index];
    seg.duration_s = cfg.control_step_s;
    seg.energy_ws = maneuver_energy(seg.maneuver, seg.duration_s, cfg.energy);
    seg.start = nodes[chain[i - 1]].state;
    seg.end = n.state;
    res.trajectory.segments.push_back(seg);
  }
  res.trajectory.total_energy_ws = nodes[best].accumulated_energy;
  res.nodes = std::move(nodes);
  return res;
}

}  // namespace ornith
