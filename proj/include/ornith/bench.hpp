#ifndef ORNITH_BENCH_HPP
#define ORNITH_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ornith/aorrt.hpp"
#include "ornith/planner.hpp"
#include "ornith/trajectory.hpp"
#include "ornith/types.hpp"
#include "ornith/vehicle.hpp"

namespace ornith {

/// The full maneuver library: seven tail deflections {0, -1, ..., -6} deg
/// crossed with flapping frequencies {0, 4, 5, 6} Hz (28 maneuvers).
std::vector<Maneuver> full_maneuver_set();

/// Target rectangle in meters, z positive down.
struct Rect {
  double x_min = 200.0, x_max = 250.0;
  double z_min = -20.0, z_max = 100.0;
};

struct Scenario {
  std::string label;
  FlightState start;   // nondimensional
  FlightState target;  // nondimensional
  double tolerance = 3.0;
  ToleranceMetric metric = ToleranceMetric::kPositionOnly;
};

struct ScenarioDefaults {
  double u0 = 1.0;  // initial and target forward speed, nondimensional
  double tolerance = 3.0;
  ToleranceMetric metric = ToleranceMetric::kPositionOnly;
};

/// Deterministic uniform grid of `count` targets over the rectangle,
/// start at the origin with zero pitch. The grid shape is rows x cols with
/// cols the largest divisor of count not exceeding sqrt(count) (80 -> 8x10);
/// axis extremes are included, and a single-point axis uses the midpoint.
std::vector<Scenario> generate_grid_scenarios(int count, const Rect& rect,
                                              const CharacteristicScales& sc,
                                              const ScenarioDefaults& d = {});

/// Seeded uniform random targets with x in x_range and z in z_range
/// (meters). The generator is a fixed 64-bit scheme so sequences are
/// reproducible across platforms.
std::vector<Scenario> generate_random_scenarios(
    int count, double x_range[2], double z_range[2], std::uint64_t seed,
    const CharacteristicScales& sc, const ScenarioDefaults& d = {});

/// Goal deviation of a final state: full-state nondimensional Euclidean or
/// position-only meters, matching the scenario metric.
double accuracy(const FlightState& final_state, const FlightState& target,
                ToleranceMetric metric, const CharacteristicScales& sc);

struct RunRecord {
  std::string scenario;
  std::string planner;
  bool solved = false;
  double delta = 0.0;      // accuracy of the final state (metric units)
  double energy_ws = 0.0;  // trajectory energy; 0 when unsolved
  double wall_s = 0.0;     // planning wall time
  std::optional<Trajectory> trajectory;
};

/// Fraction of records with solved && delta inside the goal criterion is
/// left to callers; this is simply #solved / #records.
double precision_rate(const std::vector<RunRecord>& records);

/// Mean and standard error of the mean over solved records of a field.
struct MeanSem {
  double mean = 0.0;
  double sem = 0.0;
  std::size_t n = 0;
};
MeanSem mean_sem(const std::vector<double>& values);

/// Fraction of segment slots occupied by each maneuver across trajectories.
/// Rates sum to 1 when any segments exist.
std::map<Maneuver, double> occurrence_rates(
    const std::vector<Trajectory>& trajectories);

/// Maneuvers whose rate is >= threshold, ordered by decreasing rate then
/// canonical (delta, f) order. threshold 0 keeps the whole set.
std::vector<Maneuver> reduce_maneuver_set(
    const std::map<Maneuver, double>& rates, double threshold);

struct SweepSpec {
  std::string parameter;        // one of: t_s, k_d, k_w, time_steps
  std::vector<double> values;   // scalar parameter values
  std::vector<std::vector<double>> time_step_sets;  // for multi-duration
  std::vector<Scenario> scenarios;
  PlannerConfig base;
  int jobs = 1;
};

struct SweepRow {
  std::string value_label;
  MeanSem delta;
  MeanSem energy;
  MeanSem wall;
  double solved_rate = 0.0;
};

struct SweepResult {
  std::vector<RunRecord> records;
  std::vector<SweepRow> summary;
};

/// Runs the planner on every (value, scenario) pair, overriding one config
/// parameter per value. Scenario runs may execute in parallel (jobs);
/// records keep deterministic order regardless.
SweepResult run_sweep(const SweepSpec& spec, const VehicleParams& p,
                      const CharacteristicScales& sc);

struct ComparisonSpec {
  std::vector<Scenario> scenarios;
  PlannerConfig tree;            // tree-search planner configuration
  std::vector<RrtConfig> rrt;    // one entry per control-step setting
  /// When true each RRT run's budget is the tree planner's measured wall
  /// time on the same scenario (equal-budget comparison); otherwise the
  /// configured time_budget_s applies.
  bool match_budget = true;
  double goal_half_side_m = 3.0;
};

struct WaypointCloud {
  std::string planner;
  std::string scenario;
  std::vector<std::pair<double, double>> points_m;  // (x, z) of tree nodes
};

struct ComparisonReport {
  std::vector<RunRecord> records;  // tree planner rows then RRT rows
  std::vector<WaypointCloud> clouds;
  /// Per planner label: precision rate over the goal square and mean energy
  /// over scenarios solved by both that planner and the tree planner.
  struct PlannerSummary {
    std::string planner;
    double precision = 0.0;
    MeanSem energy_joint;
    std::size_t joint_count = 0;
  };
  std::vector<PlannerSummary> summary;
};

/// Runs the tree planner and every RRT configuration on each scenario.
/// Success for both planners means the final position lies inside the goal
/// square centered on the target.
ComparisonReport run_comparison(const ComparisonSpec& spec,
                                const VehicleParams& p,
                                const CharacteristicScales& sc);

struct PerchSpec {
  std::vector<double> altitudes_m = {2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
  double ahead_m = 10.0;              // target distance ahead of start
  std::vector<Maneuver> maneuver_set; // empty selects the perching library
  double time_step_s = 1.0;
  double k_d = 2.0;
  int k_w = 4;
  double tolerance_m = 0.5;
  /// Launch speed. 0.88 sits mid-band in the launch window that reaches all
  /// default altitudes: slower launches sink past the shallow profiles,
  /// faster ones overshoot the steep ones.
  double u0 = 0.88;
  double w0 = 0.0;  // initial sink rate, nondimensional
  /// Terminal candidates past the target plane stay eligible. Short-range
  /// descents need the extra endpoint density near the plane.
  bool accept_overshoot = true;
};

/// The nine-maneuver perching library: every glide deflection plus the
/// straight-tail flapping settings.
std::vector<Maneuver> perch_maneuver_set();

struct PerchRecord {
  double altitude_m = 0.0;
  bool solved = false;
  double error_m = 0.0;
  double wall_s = 0.0;
  /// True when the trajectory ends gliding with the largest configured tail
  /// deflection magnitude, preceded by a glide.
  bool flare_pattern = false;
  std::optional<Trajectory> trajectory;
};

std::vector<PerchRecord> run_perching(const PerchSpec& spec,
                                      const VehicleParams& p,
                                      const CharacteristicScales& sc);

/// CSV renderings of bench outputs (deterministic formatting).
std::string records_to_csv(const std::vector<RunRecord>& records);
std::string sweep_summary_to_csv(const std::vector<SweepRow>& rows);
std::string clouds_to_csv(const std::vector<WaypointCloud>& clouds);
std::string rates_to_csv(const std::map<Maneuver, double>& rates);

}  // namespace ornith

#endif
