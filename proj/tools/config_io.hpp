#ifndef ORNITH_TOOLS_CONFIG_IO_HPP
#define ORNITH_TOOLS_CONFIG_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ornith/bench.hpp"
#include "ornith/planner.hpp"
#include "ornith/trajectory.hpp"

// JSON schemas for the command-line tool. Every parser rejects unknown keys
// so a typo in a config file fails loudly instead of silently applying a
// default. All throw ornith::ConfigError on malformed input.
namespace cli {

ornith::Maneuver parse_maneuver(const nlohmann::json& j);
std::vector<ornith::Maneuver> parse_maneuver_set(const nlohmann::json& j);

ornith::EnergyModel parse_energy(const nlohmann::json& j);
ornith::IntegratorConfig parse_integrator(const nlohmann::json& j);
ornith::PlannerConfig parse_planner(const nlohmann::json& j);
ornith::RrtConfig parse_rrt(const nlohmann::json& j);

ornith::Scenario parse_scenario(const nlohmann::json& j,
                                const ornith::CharacteristicScales& sc,
                                const std::string& fallback_label);

/// Scenario source: {"list": [...]}, {"grid": {...}} or {"random": {...}}.
/// seed_override replaces the random source's seed when present.
std::vector<ornith::Scenario> parse_scenarios(
    const nlohmann::json& j, const ornith::CharacteristicScales& sc,
    std::optional<std::uint64_t> seed_override);

struct PlanJob {
  ornith::PlannerConfig planner;
  ornith::Scenario scenario;
};
PlanJob parse_plan_job(const nlohmann::json& j,
                       const ornith::CharacteristicScales& sc);

struct SimulateJob {
  ornith::FlightState start;  // nondimensional
  std::vector<std::pair<ornith::Maneuver, double>> schedule;  // seconds
  ornith::IntegratorConfig integrator;
};
SimulateJob parse_simulate_job(const nlohmann::json& j,
                               const ornith::CharacteristicScales& sc);

ornith::SweepSpec parse_sweep_spec(const nlohmann::json& j,
                                   const ornith::CharacteristicScales& sc,
                                   std::optional<std::uint64_t> seed_override,
                                   int jobs);

ornith::ComparisonSpec parse_comparison_spec(
    const nlohmann::json& j, const ornith::CharacteristicScales& sc,
    std::optional<std::uint64_t> seed_override);

ornith::PerchSpec parse_perch_spec(const nlohmann::json& j);

struct ManeuversJob {
  std::vector<std::string> trajectory_paths;
  std::string trajectory_dir;  // scanned for *.json when set
  std::string rates_file;      // CSV delta_deg,f_hz,rate; bypasses counting
  double threshold = 0.0;
};
ManeuversJob parse_maneuvers_job(const nlohmann::json& j);

/// Reads a rates CSV produced by rates_to_csv (or written by hand).
std::map<ornith::Maneuver, double> read_rates_csv(const std::string& path);

nlohmann::json load_json_file(const std::string& path);

}  // namespace cli

#endif
