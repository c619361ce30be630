#include <doctest.h>

#include <cmath>

#include "ornith/aorrt.hpp"
#include "ornith/bench.hpp"
#include "ornith/errors.hpp"
#include "ornith/trajectory.hpp"

using ornith::CharacteristicScales;
using ornith::FlightState;
using ornith::RrtConfig;
using ornith::RrtResult;
using ornith::VehicleParams;

namespace {
const VehicleParams p{};
const CharacteristicScales sc{};

FlightState launch() {
  FlightState s;
  s.u = 1.0;
  return s;
}

// A nearby descending target with a wide goal square: reliably reachable
// within a few thousand iterations.
FlightState near_target() {
  FlightState t;
  t.x = sc.to_nd_length(60.0);
  t.z = sc.to_nd_length(8.0);
  t.u = 1.0;
  return t;
}

RrtConfig smoke_config() {
  RrtConfig cfg;
  cfg.maneuver_set = ornith::full_maneuver_set();
  cfg.control_step_s = 2.0;
  cfg.time_budget_s = 0.0;  // iteration-bound: deterministic across hosts
  cfg.max_iterations = 5000;
  cfg.goal_half_side_m = 6.0;
  cfg.seed = 11;
  cfg.bounds = ornith::default_sample_bounds(launch(), near_target(), sc);
  return cfg;
}
}  // namespace

TEST_CASE("iteration-bound runs repeat exactly") {
  const RrtConfig cfg = smoke_config();
  const RrtResult a = ornith::aorrt_plan(launch(), near_target(), cfg, p, sc);
  const RrtResult b = ornith::aorrt_plan(launch(), near_target(), cfg, p, sc);
  CHECK(a.iterations == b.iterations);
  CHECK(a.nodes.size() == b.nodes.size());
  CHECK(ornith::trajectory_to_json(a.trajectory) ==
        ornith::trajectory_to_json(b.trajectory));
}

TEST_CASE("the seed changes the search") {
  RrtConfig cfg = smoke_config();
  const RrtResult a = ornith::aorrt_plan(launch(), near_target(), cfg, p, sc);
  cfg.seed = 12;
  const RrtResult b = ornith::aorrt_plan(launch(), near_target(), cfg, p, sc);
  CHECK(ornith::trajectory_to_json(a.trajectory) !=
        ornith::trajectory_to_json(b.trajectory));
}

TEST_CASE("solutions land inside the goal square with valid structure") {
  const RrtConfig cfg = smoke_config();
  const FlightState target = near_target();
  const RrtResult res = ornith::aorrt_plan(launch(), target, cfg, p, sc);

  const FlightState end = res.trajectory.final_state();
  CHECK(std::abs(sc.to_m(end.x - target.x)) <= cfg.goal_half_side_m);
  CHECK(std::abs(sc.to_m(end.z - target.z)) <= cfg.goal_half_side_m);

  CHECK(res.trajectory.planner == "aorrt");
  REQUIRE(!res.trajectory.segments.empty());
  for (const auto& seg : res.trajectory.segments) {
    CHECK(seg.duration_s == cfg.control_step_s);
    CHECK(seg.energy_ws ==
          ornith::maneuver_energy(seg.maneuver, seg.duration_s, cfg.energy));
  }
  CHECK(ornith::trajectory_energy(res.trajectory) ==
        res.trajectory.total_energy_ws);

  // Tree structure: every node's parent precedes it; energies accumulate.
  for (std::size_t i = 1; i < res.nodes.size(); ++i) {
    const auto& n = res.nodes[i];
    REQUIRE(n.parent >= 0);
    REQUIRE(n.parent < static_cast<std::int32_t>(i));
    const auto& par = res.nodes[n.parent];
    CHECK(n.accumulated_energy ==
          par.accumulated_energy +
              ornith::maneuver_energy(cfg.maneuver_set[n.maneuver_index],
                                      cfg.control_step_s, cfg.energy));
  }

  // Among in-square nodes, the returned path is the cheapest.
  const double half_nd = sc.to_nd_length(cfg.goal_half_side_m);
  for (const auto& n : res.nodes) {
    if (std::abs(n.state.x - target.x) <= half_nd &&
        std::abs(n.state.z - target.z) <= half_nd)
      CHECK(n.accumulated_energy >= res.trajectory.total_energy_ws);
  }
}

TEST_CASE("an unreachable goal reports the closest approach") {
  RrtConfig cfg = smoke_config();
  cfg.max_iterations = 5;  // far too few to cross 60 m
  try {
    ornith::aorrt_plan(launch(), near_target(), cfg, p, sc);
    FAIL("expected NoSolutionError");
  } catch (const ornith::NoSolutionError& e) {
    CHECK(std::isfinite(e.best_distance));
    CHECK(e.best_distance > cfg.goal_half_side_m);
  }
}

TEST_CASE("sampling box spans start and target with margins") {
  const auto b = ornith::default_sample_bounds(launch(), near_target(), sc);
  CHECK(sc.to_m(b.x_min) == doctest::Approx(-10.0));
  CHECK(sc.to_m(b.x_max) == doctest::Approx(70.0));
  CHECK(sc.to_m(b.z_min) == doctest::Approx(-30.0));
  CHECK(sc.to_m(b.z_max) == doctest::Approx(38.0));
}

TEST_CASE("configuration errors are rejected") {
  RrtConfig cfg = smoke_config();
  cfg.maneuver_set.clear();
  CHECK_THROWS_AS(ornith::aorrt_plan(launch(), near_target(), cfg, p, sc),
                  ornith::ConfigError);
  cfg = smoke_config();
  cfg.control_step_s = 0.0;
  CHECK_THROWS_AS(ornith::aorrt_plan(launch(), near_target(), cfg, p, sc),
                  ornith::ConfigError);
  cfg = smoke_config();
  cfg.time_budget_s = 0.0;
  cfg.max_iterations = 0;  // neither budget nor bound
  CHECK_THROWS_AS(ornith::aorrt_plan(launch(), near_target(), cfg, p, sc),
                  ornith::ConfigError);
}
