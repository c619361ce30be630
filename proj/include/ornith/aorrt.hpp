#ifndef ORNITH_AORRT_HPP
#define ORNITH_AORRT_HPP

#include <cstdint>
#include <vector>

#include "ornith/dynamics.hpp"
#include "ornith/energy.hpp"
#include "ornith/trajectory.hpp"
#include "ornith/types.hpp"
#include "ornith/vehicle.hpp"

namespace ornith {

/// Axis-aligned sampling box over the state components, nondimensional.
struct StateBounds {
  double x_min = 0.0, x_max = 0.0;
  double z_min = 0.0, z_max = 0.0;
  double u_min = 0.1, u_max = 2.5;
  double w_min = -1.0, w_max = 1.0;
  double theta_min = -1.0, theta_max = 1.0;
  double q_min = -0.5, q_max = 0.5;
};

/// Weights of the nearest-neighbor metric over the cost-augmented state
/// (cost / cost_scale, x / length_scale, z / length_scale, u, w, theta, q).
struct MetricWeights {
  double cost = 1.0;
  double x = 1.0;
  double z = 1.0;
  double u = 1.0;
  double w = 1.0;
  double theta = 0.5;
  double q = 0.1;
};

struct RrtConfig {
  std::vector<Maneuver> maneuver_set;
  double control_step_s = 2.0;  // duration of one extension, seconds

  double time_budget_s = 10.0;  // wall-clock budget; <= 0 disables it
  std::int64_t max_iterations = 0;  // > 0 stops after this many iterations

  double goal_half_side_m = 3.0;  // goal square half side around the target
  StateBounds bounds;
  MetricWeights weights;
  /// Cost sampling upper bound in watt seconds; 0 derives a generous bound
  /// from the maneuver set, the control step and the tree depth allowance.
  double cost_bound_ws = 0.0;
  /// Normalizers of the metric; 0 derives cost_scale from one maximum-power
  /// control step and length_scale from the sampling box diagonal.
  double cost_scale = 0.0;
  double length_scale = 0.0;

  std::uint64_t seed = 1;
  EnergyModel energy;
  IntegratorConfig integrator;
};

/// Sampling box spanning start and target with margins wide enough for the
/// maneuver envelope.
StateBounds default_sample_bounds(const FlightState& start,
                                  const FlightState& target,
                                  const CharacteristicScales& sc);

struct RrtNode {
  FlightState state;
  std::int32_t parent = -1;
  std::int32_t maneuver_index = -1;
  double accumulated_energy = 0.0;
};

struct RrtResult {
  Trajectory trajectory;
  std::vector<RrtNode> nodes;
  std::int64_t iterations = 0;
};

/// Cost-augmented RRT over the maneuver automaton: each iteration samples a
/// random (cost, state) point, extends the nearest tree node under the
/// weighted metric by one random maneuver held for control_step_s, and
/// accumulates energy as cost. On expiry returns the minimum-energy path
/// whose endpoint lies inside the goal square (position only, meters).
/// Runs are reproducible for a fixed seed and iteration bound. Throws
/// NoSolutionError with the best goal distance when no node reaches goal.
RrtResult aorrt_plan(const FlightState& start, const FlightState& target,
                     const RrtConfig& cfg, const VehicleParams& p,
                     const CharacteristicScales& sc);

}  // namespace ornith

#endif
