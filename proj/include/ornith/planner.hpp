#ifndef ORNITH_PLANNER_HPP
#define ORNITH_PLANNER_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "ornith/dynamics.hpp"
#include "ornith/energy.hpp"
#include "ornith/reference_curve.hpp"
#include "ornith/trajectory.hpp"
#include "ornith/types.hpp"
#include "ornith/vehicle.hpp"

namespace ornith {

enum class ToleranceMetric { kFullState, kPositionOnly };

/// Distance between two states under the goal metric: full-state Euclidean
/// over (x, z, u, w, theta, q) in nondimensional units, or position-only
/// Euclidean in meters.
double state_distance(const FlightState& a, const FlightState& b,
                      ToleranceMetric metric, const CharacteristicScales& sc);

enum class PartitionMode { kEqualWidth, kQuantile };

struct PlannerConfig {
  std::vector<Maneuver> maneuver_set;
  std::vector<double> time_steps = {12.0};  // segment durations, seconds

  /// Corridor radius in meters; infinity disables corridor pruning.
  double k_d = 15.0;
  /// Number of vertical partitions per level; 0 disables witness pruning
  /// (every candidate survives).
  int k_w = 25;

  double tolerance = 3.0;  // goal tolerance under `metric`
  ToleranceMetric metric = ToleranceMetric::kPositionOnly;

  /// 0 chooses ceil(3 |x_f - x_0| / (U_c * min(time_steps))) levels.
  int max_depth = 0;
  PartitionMode partition_mode = PartitionMode::kEqualWidth;
  /// When true, candidates past the target plane are still eligible as
  /// terminal nodes if they meet the tolerance; they are never expanded.
  bool accept_overshoot = false;

  EnergyModel energy;
  IntegratorConfig integrator;
};

/// One node of the search tree. Candidates that lost their partition's
/// witness contest stay in the tree (flagged) so the final level can be
/// searched in full, but only witnesses are expanded.
struct PlanNode {
  FlightState state;
  std::int32_t parent = -1;         // index into PlanTree::nodes, -1 for root
  std::int32_t maneuver_index = -1; // index into config maneuver_set
  double duration_s = 0.0;          // inbound segment duration
  double accumulated_energy = 0.0;  // exact sum of inbound maneuver energies
  std::int32_t depth = 0;
  bool witness = true;    // selected to represent its partition
  bool overshoot = false; // kept past the target plane (accept_overshoot)
};

struct PlanTree {
  std::vector<PlanNode> nodes;
  std::int32_t levels = 0;       // depth of the deepest inserted node
  std::int32_t final_level = 0;  // last level that produced candidates
};

/// Candidate states produced by expanding every leaf with every
/// (maneuver, duration) pair, keeping those inside the corridor and not past
/// the target plane (unless accept_overshoot keeps them as terminals).
/// Divergent or degenerate propagations are dropped. Candidates preserve
/// the deterministic order (leaf, maneuver, duration).
std::vector<PlanNode> expand_leaves(const PlanTree& tree,
                                    const std::vector<std::int32_t>& leaves,
                                    const FlightState& target,
                                    const Corridor& corridor,
                                    const PlannerConfig& cfg,
                                    const VehicleParams& p,
                                    const CharacteristicScales& sc);

/// Groups candidate indices by vertical position into k_w bins of equal
/// width over [z_min, z_max] (the last bin closed). A single partition is
/// returned when z_min = z_max, and when k_w >= candidate count every
/// candidate forms its own partition so that no pruning can occur.
/// kQuantile mode splits at z quantiles instead, for clustered levels.
std::vector<std::vector<std::int32_t>> partition_by_z(
    const std::vector<PlanNode>& candidates, int k_w,
    PartitionMode mode = PartitionMode::kEqualWidth);

/// Index of the partition's representative: minimum accumulated energy,
/// ties broken by smaller z, then smaller x, then candidate order.
std::int32_t select_witness(const std::vector<PlanNode>& candidates,
                            const std::vector<std::int32_t>& partition);

/// Builds the level-by-level search tree from start toward target: expand
/// all current leaves, corridor-filter, partition by z, insert every
/// candidate but expand only witnesses. Stops when a level yields no
/// candidates or max_depth is reached.
PlanTree build_tree(const FlightState& start, const FlightState& target,
                    const PlannerConfig& cfg, const VehicleParams& p,
                    const CharacteristicScales& sc);

/// Selects among all stored nodes (witnesses and pruned candidates alike)
/// those within tolerance of the target, takes minimum accumulated energy
/// (ties: smaller goal distance, then smaller z, then smaller x) and
/// assembles the root-to-node trajectory. The trajectory's total energy
/// equals the node's accumulated energy exactly. Throws NoSolutionError with
/// the best achieved distance when nothing is in tolerance.
Trajectory extract_optimal_path(const PlanTree& tree, const FlightState& start,
                                const FlightState& target,
                                const PlannerConfig& cfg,
                                const CharacteristicScales& sc);

/// build_tree followed by extract_optimal_path.
Trajectory plan(const FlightState& start, const FlightState& target,
                const PlannerConfig& cfg, const VehicleParams& p,
                const CharacteristicScales& sc);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace ornith

#endif
