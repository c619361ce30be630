#include "ornith/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ornith/errors.hpp"

namespace ornith {

double state_distance(const FlightState& a, const FlightState& b,
                      ToleranceMetric metric, const CharacteristicScales& sc) {
  if (metric == ToleranceMetric::kPositionOnly) {
    const double dx = sc.to_m(a.x - b.x);
    const double dz = sc.to_m(a.z - b.z);
    return std::sqrt(dx * dx + dz * dz);
  }
  const double dx = a.x - b.x;
  const double dz = a.z - b.z;
  const double du = a.u - b.u;
  const double dw = a.w - b.w;
  const double dt = a.theta - b.theta;
  const double dq = a.q - b.q;
  return std::sqrt(dx * dx + dz * dz + du * du + dw * dw + dt * dt + dq * dq);
}

namespace {

void validate_config(const PlannerConfig& cfg) {
  if (cfg.maneuver_set.empty())
    throw ConfigError("planner: maneuver set must not be empty");
  for (const Maneuver& m : cfg.maneuver_set)
    if (!(m.f_hz >= 0.0))
      throw ConfigError("planner: flapping frequency must be >= 0");
  if (cfg.time_steps.empty())
    throw ConfigError("planner: time_steps must not be empty");
  for (double t : cfg.time_steps)
    if (!(t > 0.0)) throw ConfigError("planner: time steps must be positive");
  if (!(cfg.k_d > 0.0)) throw ConfigError("planner: k_d must be positive");
  if (cfg.k_w < 0) throw ConfigError("planner: k_w must be >= 0");
  if (!(cfg.tolerance > 0.0))
    throw ConfigError("planner: tolerance must be positive");
  cfg.energy.validate();
}

int default_max_depth(const FlightState& start, const FlightState& target,
                      const PlannerConfig& cfg,
                      const CharacteristicScales& sc) {
  const double x_d = std::abs(sc.to_m(target.x - start.x));
  const double t_min =
      *std::min_element(cfg.time_steps.begin(), cfg.time_steps.end());
  const int depth = static_cast<int>(std::ceil(3.0 * x_d / (sc.U_c * t_min)));
  return std::max(depth, 1);
}

}  // namespace

std::vector<PlanNode> expand_leaves(const PlanTree& tree,
                                    const std::vector<std::int32_t>& leaves,
                                    const FlightState& target,
                                    const Corridor& corridor,
                                    const PlannerConfig& cfg,
                                    const VehicleParams& p,
                                    const CharacteristicScales& sc) {
  std::vector<PlanNode> out;
  out.reserve(leaves.size() * cfg.maneuver_set.size() * cfg.time_steps.size());
  for (const std::int32_t leaf : leaves) {
    const PlanNode& parent = tree.nodes[leaf];
    for (std::size_t mi = 0; mi < cfg.maneuver_set.size(); ++mi) {
      const Maneuver& m = cfg.maneuver_set[mi];
      for (double ts : cfg.time_steps) {
        FlightState end;
        try {
          end = integrate(parent.state, m, ts, p, sc, cfg.integrator);
        } catch (const DivergenceError&) {
          continue;
        } catch (const DegenerateStateError&) {
          continue;
        }
        if (!(end.x > parent.state.x)) continue;  // forward motion only
        if (!corridor.contains(sc.to_m(end.x), sc.to_m(end.z))) continue;

        PlanNode n;
        n.state = end;
        n.parent = leaf;
        n.maneuver_index = static_cast<std::int32_t>(mi);
        n.duration_s = ts;
        n.accumulated_energy =
            parent.accumulated_energy + maneuver_energy(m, ts, cfg.energy);
        n.depth = parent.depth + 1;

        if (end.x > target.x) {
          if (!cfg.accept_overshoot) continue;
          n.witness = false;
          n.overshoot = true;  // terminal: eligible but never expanded
        }
        out.push_back(n);
      }
    }
  }
  return out;
}

std::vector<std::vector<std::int32_t>> partition_by_z(
    const std::vector<PlanNode>& candidates, int k_w, PartitionMode mode) {
  std::vector<std::vector<std::int32_t>> parts;
  if (candidates.empty()) return parts;
  const int n = static_cast<int>(candidates.size());

  // No pruning requested, or enough bins for everyone: singleton partitions.
  if (k_w <= 0 || k_w >= n) {
    parts.reserve(n);
    for (int i = 0; i < n; ++i) parts.push_back({i});
    return parts;
  }

  if (mode == PartitionMode::kQuantile) {
    std::vector<std::int32_t> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::int32_t a, std::int32_t b) {
                       return candidates[a].state.z < candidates[b].state.z;
                     });
    parts.resize(k_w);
    for (int r = 0; r < n; ++r)
      parts[static_cast<std::int64_t>(r) * k_w / n].push_back(order[r]);
    parts.erase(std::remove_if(parts.begin(), parts.end(),
                               [](const auto& v) { return v.empty(); }),
                parts.end());
    return parts;
  }

  double z_min = candidates[0].state.z, z_max = z_min;
  for (const PlanNode& c : candidates) {
    z_min = std::min(z_min, c.state.z);
    z_max = std::max(z_max, c.state.z);
  }
  if (z_min == z_max) {
    parts.resize(1);
    for (int i = 0; i < n; ++i) parts[0].push_back(i);
    return parts;
  }

  const double width = (z_max - z_min) / k_w;
  parts.resize(k_w);
  for (int i = 0; i < n; ++i) {
    int bin = static_cast<int>((candidates[i].state.z - z_min) / width);
    bin = std::clamp(bin, 0, k_w - 1);  // the last bin is closed
    parts[bin].push_back(i);
  }
  parts.erase(std::remove_if(parts.begin(), parts.end(),
                             [](const auto& v) { return v.empty(); }),
              parts.end());
  return parts;
}

std::int32_t select_witness(const std::vector<PlanNode>& candidates,
                            const std::vector<std::int32_t>& partition) {
  if (partition.empty())
    throw std::invalid_argument("select_witness: empty partition");
  std::int32_t best = partition[0];
  for (std::size_t i = 1; i < partition.size(); ++i) {
    const PlanNode& a = candidates[partition[i]];
    const PlanNode& b = candidates[best];
    if (a.accumulated_energy < b.accumulated_energy ||
        (a.accumulated_energy == b.accumulated_energy &&
         (a.state.z < b.state.z ||
          (a.state.z == b.state.z && a.state.x < b.state.x))))
      best = partition[i];
  }
  return best;
}

PlanTree build_tree(const FlightState& start, const FlightState& target,
                    const PlannerConfig& cfg, const VehicleParams& p,
                    const CharacteristicScales& sc) {
  validate_config(cfg);
  if (!(target.x > start.x))
    throw ConfigError("planner: target must lie ahead of the start");

  Corridor corridor;
  corridor.curve = make_reference_curve(sc.to_m(start.x), sc.to_m(start.z),
                                        sc.to_m(target.x), sc.to_m(target.z));
  corridor.k_d = cfg.k_d;

  const int max_depth = cfg.max_depth > 0
                            ? cfg.max_depth
                            : default_max_depth(start, target, cfg, sc);

  PlanTree tree;
  PlanNode root;
  root.state = start;
  tree.nodes.push_back(root);

  std::vector<std::int32_t> leaves = {0};
  for (int level = 0; level < max_depth && !leaves.empty(); ++level) {
    std::vector<PlanNode> candidates =
        expand_leaves(tree, leaves, target, corridor, cfg, p, sc);
    if (candidates.empty()) break;
    tree.final_level = level + 1;

    // Overshoot terminals are stored but take no part in the partitions.
    std::vector<std::int32_t> live;
    live.reserve(candidates.size());
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(candidates.size()); ++i)
      if (!candidates[i].overshoot) live.push_back(i);

    std::vector<PlanNode> live_nodes;
    live_nodes.reserve(live.size());
    for (std::int32_t i : live) live_nodes.push_back(candidates[i]);

    const auto parts = partition_by_z(live_nodes, cfg.k_w, cfg.partition_mode);
    std::vector<char> is_witness(live.size(), 0);
    for (const auto& part : parts) is_witness[select_witness(live_nodes, part)] = 1;

    leaves.clear();
    for (std::size_t li = 0; li < live.size(); ++li)
      candidates[live[li]].witness = is_witness[li] != 0;

    for (const PlanNode& c : candidates) {
      tree.nodes.push_back(c);
      if (c.witness)
        leaves.push_back(static_cast<std::int32_t>(tree.nodes.size() - 1));
    }
    tree.levels = level + 1;
  }
  return tree;
}

Trajectory extract_optimal_path(const PlanTree& tree, const FlightState& start,
                                const FlightState& target,
                                const PlannerConfig& cfg,
                                const CharacteristicScales& sc) {
  double best_distance = kInf;
  std::int32_t best = -1;
  double best_energy = kInf;
  double best_goal = kInf;

  // Every stored node is a candidate endpoint, witnesses and losers alike;
  // only expansion is restricted to witnesses.
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(tree.nodes.size()); ++i) {
    const PlanNode& n = tree.nodes[i];
    const double dist = state_distance(n.state, target, cfg.metric, sc);
    best_distance = std::min(best_distance, dist);
    if (dist > cfg.tolerance) continue;

    bool better = best < 0;
    if (!better) {
      const PlanNode& b = tree.nodes[best];
      better = n.accumulated_energy < best_energy ||
               (n.accumulated_energy == best_energy &&
                (dist < best_goal ||
                 (dist == best_goal &&
                  (n.state.z < b.state.z ||
                   (n.state.z == b.state.z && n.state.x < b.state.x)))));
    }
    if (better) {
      best = i;
      best_energy = n.accumulated_energy;
      best_goal = dist;
    }
  }

  if (best < 0)
    throw NoSolutionError("no tree node within goal tolerance", best_distance);

  std::vector<std::int32_t> chain;
  for (std::int32_t i = best; i >= 0; i = tree.nodes[i].parent)
    chain.push_back(i);
  std::reverse(chain.begin(), chain.end());

  Trajectory traj;
  traj.planner = "tree";
  traj.start = start;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const PlanNode& n = tree.nodes[chain[i]];
    Segment seg;
    seg.maneuver = cfg.maneuver_set[n.maneuver_index];
    seg.duration_s = n.duration_s;
    // Recomputing the edge energy (rather than differencing accumulations)
    // keeps the segment sum bit-identical to the node's accumulated energy.
    seg.energy_ws = maneuver_energy(seg.maneuver, seg.duration_s, cfg.energy);
    seg.start = tree.nodes[chain[i - 1]].state;
    seg.end = n.state;
    traj.segments.push_back(seg);
  }
  traj.total_energy_ws = tree.nodes[best].accumulated_energy;
  return traj;
}

Trajectory plan(const FlightState& start, const FlightState& target,
                const PlannerConfig& cfg, const VehicleParams& p,
                const CharacteristicScales& sc) {
  const PlanTree tree = build_tree(start, target, cfg, p, sc);
  return extract_optimal_path(tree, start, target, cfg, sc);
}

}  // namespace ornith
