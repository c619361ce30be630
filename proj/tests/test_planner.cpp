#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "ornith/errors.hpp"
#include "ornith/planner.hpp"
#include "ornith/trajectory.hpp"

using ornith::CharacteristicScales;
using ornith::Corridor;
using ornith::FlightState;
using ornith::Maneuver;
using ornith::PlanNode;
using ornith::PlannerConfig;
using ornith::PlanTree;
using ornith::Trajectory;
using ornith::VehicleParams;
using ornith::kInf;

namespace {
const VehicleParams p{};
const CharacteristicScales sc{};

// Four maneuvers spanning the glide deflections plus one flapping setting:
// small enough for exhaustive cross-checks.
std::vector<Maneuver> tiny_set() {
  return {{0.0, 0.0}, {-3.0, 0.0}, {-6.0, 0.0}, {0.0, 5.0}};
}

FlightState launch() {
  FlightState s;
  s.u = 1.0;
  return s;
}

PlanNode node_at(double z, double energy = 0.0, double x = 0.0) {
  PlanNode n;
  n.state.z = z;
  n.state.x = x;
  n.accumulated_energy = energy;
  return n;
}
}  // namespace

TEST_CASE("goal metric distances by hand") {
  FlightState a, b;
  a.x = 10.0;
  a.z = 5.0;
  const double dm = ornith::state_distance(
      a, b, ornith::ToleranceMetric::kPositionOnly, sc);
  CHECK(dm == doctest::Approx(std::hypot(10.0 * sc.L_c, 5.0 * sc.L_c))
                  .epsilon(1e-14));

  a.u = 0.3;
  a.w = -0.1;
  a.theta = 0.2;
  a.q = 0.05;
  const double dn =
      ornith::state_distance(a, b, ornith::ToleranceMetric::kFullState, sc);
  CHECK(dn == doctest::Approx(std::sqrt(100.0 + 25.0 + 0.09 + 0.01 + 0.04 +
                                        0.0025))
                  .epsilon(1e-14));
}

TEST_CASE("equal-width partition bins by vertical position") {
  std::vector<PlanNode> cands;
  for (double z : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}) cands.push_back(node_at(z));

  const auto parts = ornith::partition_by_z(cands, 3);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == std::vector<std::int32_t>{0, 1});
  CHECK(parts[1] == std::vector<std::int32_t>{2, 3});
  CHECK(parts[2] == std::vector<std::int32_t>{4, 5});
}

TEST_CASE("partition edge cases") {
  std::vector<PlanNode> cands;
  for (double z : {2.0, 7.0, 4.0}) cands.push_back(node_at(z));

  SUBCASE("zero width disables pruning") {
    const auto parts = ornith::partition_by_z(cands, 0);
    REQUIRE(parts.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(parts[i] == std::vector<std::int32_t>{static_cast<std::int32_t>(i)});
  }
  SUBCASE("more bins than candidates keeps everyone") {
    CHECK(ornith::partition_by_z(cands, 10).size() == 3);
  }
  SUBCASE("identical heights collapse to one bin") {
    std::vector<PlanNode> flat{node_at(1.5), node_at(1.5), node_at(1.5)};
    const auto parts = ornith::partition_by_z(flat, 2);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].size() == 3);
  }
  SUBCASE("empty candidate list yields no partitions") {
    CHECK(ornith::partition_by_z({}, 4).empty());
  }
}

TEST_CASE("quantile partition splits sorted order evenly") {
  std::vector<PlanNode> cands;
  // Clustered heights that equal-width would lump into one bin.
  for (double z : {0.0, 0.01, 0.02, 0.03, 0.04, 100.0})
    cands.push_back(node_at(z));
  const auto parts =
      ornith::partition_by_z(cands, 3, ornith::PartitionMode::kQuantile);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].size() == 2);
  CHECK(parts[1].size() == 2);
  CHECK(parts[2].size() == 2);
}

TEST_CASE("witness selection prefers energy, then lower flight, then x") {
  std::vector<PlanNode> cands;
  cands.push_back(node_at(1.0, 5.0));
  cands.push_back(node_at(2.0, 3.0));
  cands.push_back(node_at(0.5, 3.0));
  cands.push_back(node_at(0.5, 4.0));
  const std::vector<std::int32_t> all{0, 1, 2, 3};
  CHECK(ornith::select_witness(cands, all) == 2);

  // z tie resolved by smaller x.
  std::vector<PlanNode> tie;
  tie.push_back(node_at(1.0, 2.0, 9.0));
  tie.push_back(node_at(1.0, 2.0, 4.0));
  CHECK(ornith::select_witness(tie, {0, 1}) == 1);

  CHECK_THROWS_AS(ornith::select_witness(cands, {}), std::invalid_argument);
}

TEST_CASE("leaf expansion reproduces plain integration") {
  PlannerConfig cfg;
  cfg.maneuver_set = tiny_set();
  cfg.time_steps = {15.0};
  cfg.k_d = kInf;

  FlightState target;
  target.x = 4000.0;  // far plane: nothing overshoots
  target.u = 1.0;

  PlanTree tree;
  PlanNode root;
  root.state = launch();
  tree.nodes.push_back(root);

  Corridor cor;
  cor.curve = ornith::make_reference_curve(0.0, 0.0, sc.to_m(target.x), 0.0);
  cor.k_d = kInf;

  const auto cands =
      ornith::expand_leaves(tree, {0}, target, cor, cfg, p, sc);
  REQUIRE(!cands.empty());
  CHECK(cands.size() <= cfg.maneuver_set.size());

  std::size_t ci = 0;
  for (std::size_t mi = 0; mi < cfg.maneuver_set.size(); ++mi) {
    FlightState end;
    try {
      end = ornith::integrate(root.state, cfg.maneuver_set[mi], 15.0, p, sc,
                              cfg.integrator);
    } catch (const std::exception&) {
      continue;
    }
    if (!(end.x > root.state.x)) continue;
    REQUIRE(ci < cands.size());
    const PlanNode& n = cands[ci++];
    CHECK(n.maneuver_index == static_cast<std::int32_t>(mi));
    CHECK(n.parent == 0);
    CHECK(n.depth == 1);
    CHECK(n.duration_s == 15.0);
    CHECK(n.state.x == end.x);
    CHECK(n.state.z == end.z);
    CHECK(n.state.u == end.u);
    CHECK(n.accumulated_energy ==
          ornith::maneuver_energy(cfg.maneuver_set[mi], 15.0, cfg.energy));
  }
  CHECK(ci == cands.size());
}

TEST_CASE("corridor filter equals expanding wide then testing membership") {
  PlannerConfig cfg;
  cfg.maneuver_set = tiny_set();
  cfg.time_steps = {15.0};

  FlightState target;
  target.x = 4000.0;
  target.u = 1.0;

  PlanTree tree;
  PlanNode root;
  root.state = launch();
  tree.nodes.push_back(root);

  Corridor wide;
  wide.curve = ornith::make_reference_curve(0.0, 0.0, sc.to_m(target.x), 30.0);
  wide.k_d = kInf;
  Corridor tight = wide;
  tight.k_d = 8.0;

  const auto all = ornith::expand_leaves(tree, {0}, target, wide, cfg, p, sc);
  const auto kept = ornith::expand_leaves(tree, {0}, target, tight, cfg, p, sc);

  std::size_t ki = 0;
  for (const PlanNode& n : all) {
    if (!tight.contains(sc.to_m(n.state.x), sc.to_m(n.state.z))) continue;
    REQUIRE(ki < kept.size());
    CHECK(kept[ki].state.x == n.state.x);
    CHECK(kept[ki].state.z == n.state.z);
    CHECK(kept[ki].maneuver_index == n.maneuver_index);
    ++ki;
  }
  CHECK(ki == kept.size());
}

TEST_CASE("candidates past the target plane are dropped or kept terminal") {
  PlannerConfig cfg;
  cfg.maneuver_set = {{0.0, 0.0}};
  cfg.time_steps = {15.0};
  cfg.k_d = kInf;
  cfg.max_depth = 1;
  cfg.tolerance = 20.0;

  // Where does one 15 s glide land?
  const FlightState end =
      ornith::integrate(launch(), {0.0, 0.0}, 15.0, p, sc, cfg.integrator);
  REQUIRE(end.x > 0.0);

  // Target plane short of the endpoint, goal point near the endpoint.
  FlightState target;
  target.x = end.x - 11.0 / sc.L_c;  // plane 11 m before the landing point
  target.z = end.z;
  target.u = end.u;

  const double root_dist = ornith::state_distance(
      launch(), target, ornith::ToleranceMetric::kPositionOnly, sc);
  REQUIRE(root_dist > cfg.tolerance);  // the root cannot satisfy the goal

  cfg.accept_overshoot = false;
  CHECK_THROWS_AS(ornith::plan(launch(), target, cfg, p, sc),
                  ornith::NoSolutionError);

  cfg.accept_overshoot = true;
  const Trajectory t = ornith::plan(launch(), target, cfg, p, sc);
  REQUIRE(t.segments.size() == 1);
  CHECK(t.final_state().x > target.x);

  // The overshoot node must exist in the tree, flagged and unexpanded.
  const PlanTree tree = ornith::build_tree(launch(), target, cfg, p, sc);
  REQUIRE(tree.nodes.size() == 2);
  CHECK(tree.nodes[1].overshoot);
  CHECK_FALSE(tree.nodes[1].witness);
}

TEST_CASE("tree structure invariants on a medium build") {
  PlannerConfig cfg;
  cfg.maneuver_set = tiny_set();
  cfg.time_steps = {12.0};
  cfg.k_d = 40.0;
  cfg.k_w = 3;
  cfg.max_depth = 4;
  cfg.tolerance = 25.0;

  FlightState target;
  target.x = 220.0 / sc.L_c;
  target.z = 30.0 / sc.L_c;
  target.u = 1.0;

  const PlanTree tree = ornith::build_tree(launch(), target, cfg, p, sc);
  REQUIRE(tree.nodes.size() > 1);
  CHECK(tree.levels <= cfg.max_depth);
  CHECK(tree.final_level == tree.levels);

  Corridor cor;
  cor.curve = ornith::make_reference_curve(0.0, 0.0, sc.to_m(target.x),
                                           sc.to_m(target.z));
  cor.k_d = cfg.k_d;

  std::set<std::int32_t> parents;
  std::vector<int> witnesses_per_depth(cfg.max_depth + 1, 0);
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    const PlanNode& n = tree.nodes[i];
    REQUIRE(n.parent >= 0);
    REQUIRE(n.parent < static_cast<std::int32_t>(i));
    const PlanNode& par = tree.nodes[n.parent];
    CHECK(n.depth == par.depth + 1);
    CHECK(par.witness);  // only witnesses are ever expanded
    CHECK_FALSE(par.overshoot);
    CHECK(n.state.x > par.state.x);
    CHECK(cor.contains(sc.to_m(n.state.x), sc.to_m(n.state.z)));
    CHECK(n.accumulated_energy ==
          par.accumulated_energy +
              ornith::maneuver_energy(cfg.maneuver_set[n.maneuver_index],
                                      n.duration_s, cfg.energy));
    if (n.witness) ++witnesses_per_depth[n.depth];
    parents.insert(n.parent);
  }
  for (int d = 1; d <= cfg.max_depth; ++d) {
    CAPTURE(d);
    CHECK(witnesses_per_depth[d] <= cfg.k_w);
  }
}

TEST_CASE("single-maneuver plan is one integrated segment") {
  PlannerConfig cfg;
  cfg.maneuver_set = {{-3.0, 0.0}};
  cfg.time_steps = {15.0};
  cfg.k_d = kInf;
  cfg.max_depth = 1;
  // Tight enough that the zero-energy root (some 60 m short) stays outside
  // the goal set; otherwise the empty path wins on energy.
  cfg.tolerance = 10.0;

  const FlightState end =
      ornith::integrate(launch(), {-3.0, 0.0}, 15.0, p, sc, cfg.integrator);
  FlightState target;
  target.x = end.x + 1.0;
  target.z = end.z;

  const Trajectory t = ornith::plan(launch(), target, cfg, p, sc);
  REQUIRE(t.segments.size() == 1);
  CHECK(t.planner == "tree");
  CHECK(t.segments[0].maneuver == Maneuver{-3.0, 0.0});
  CHECK(t.segments[0].duration_s == 15.0);
  CHECK(t.segments[0].end.x == end.x);
  CHECK(t.segments[0].end.z == end.z);
  CHECK(t.total_energy_ws == ornith::maneuver_energy({-3.0, 0.0}, 15.0));
  CHECK(ornith::trajectory_energy(t) == t.total_energy_ws);
}

TEST_CASE("unpruned search equals exhaustive enumeration") {
  PlannerConfig cfg;
  cfg.maneuver_set = tiny_set();
  cfg.time_steps = {15.0};
  cfg.k_d = kInf;
  cfg.k_w = 0;
  cfg.max_depth = 2;
  cfg.tolerance = 20.0;

  // A target the two-level tree can actually reach: the endpoint of a
  // glide-then-flap sequence.
  const FlightState mid =
      ornith::integrate(launch(), {-3.0, 0.0}, 15.0, p, sc, cfg.integrator);
  const FlightState goal =
      ornith::integrate(mid, {0.0, 5.0}, 15.0, p, sc, cfg.integrator);
  FlightState target;
  target.x = goal.x;
  target.z = goal.z;
  target.u = 1.0;

  const Trajectory t = ornith::plan(launch(), target, cfg, p, sc);
  const oracle::BruteResult brute =
      oracle::brute_force_plan(launch(), target, cfg, p, sc, cfg.max_depth);
  REQUIRE(brute.solved);
  CHECK(t.total_energy_ws == brute.energy);  // bit-identical accumulation

  // Pruning can only lose candidates, never find cheaper ones.
  PlannerConfig pruned = cfg;
  pruned.k_w = 1;
  pruned.k_d = 60.0;
  try {
    const Trajectory tp = ornith::plan(launch(), target, pruned, p, sc);
    CHECK(tp.total_energy_ws >= brute.energy);
  } catch (const ornith::NoSolutionError&) {
    // Acceptable: the pruned tree may miss the goal entirely.
  }
}

TEST_CASE("failure reports the closest approach") {
  PlannerConfig cfg;
  cfg.maneuver_set = tiny_set();
  cfg.time_steps = {15.0};
  cfg.k_d = kInf;
  cfg.k_w = 0;
  cfg.max_depth = 1;
  cfg.tolerance = 0.001;

  FlightState target;
  target.x = 300.0;
  target.z = 10.0;

  try {
    ornith::plan(launch(), target, cfg, p, sc);
    FAIL("expected NoSolutionError");
  } catch (const ornith::NoSolutionError& e) {
    CHECK(e.best_distance > cfg.tolerance);
    CHECK(std::isfinite(e.best_distance));
    // The brute enumeration sees the same candidate set, hence the same
    // closest approach.
    const oracle::BruteResult brute =
        oracle::brute_force_plan(launch(), target, cfg, p, sc, cfg.max_depth);
    CHECK(e.best_distance == doctest::Approx(brute.best_distance));
  }
}

TEST_CASE("identical configurations produce identical serialized plans") {
  PlannerConfig cfg;
  cfg.maneuver_set = tiny_set();
  cfg.time_steps = {15.0};
  cfg.k_d = 60.0;
  cfg.k_w = 2;
  cfg.max_depth = 3;
  cfg.tolerance = 30.0;

  FlightState target;
  target.x = 150.0 / sc.L_c;
  target.z = 25.0 / sc.L_c;
  target.u = 1.0;

  const Trajectory a = ornith::plan(launch(), target, cfg, p, sc);
  const Trajectory b = ornith::plan(launch(), target, cfg, p, sc);
  CHECK(ornith::trajectory_to_json(a) == ornith::trajectory_to_json(b));
}

TEST_CASE("trajectory segments chain exactly") {
  PlannerConfig cfg;
  cfg.maneuver_set = tiny_set();
  cfg.time_steps = {15.0};
  cfg.k_d = 60.0;
  cfg.k_w = 2;
  cfg.max_depth = 3;
  cfg.tolerance = 30.0;

  FlightState target;
  target.x = 150.0 / sc.L_c;
  target.z = 25.0 / sc.L_c;
  target.u = 1.0;

  const FlightState start = launch();
  const Trajectory t = ornith::plan(start, target, cfg, p, sc);
  REQUIRE(!t.segments.empty());
  CHECK(t.segments.front().start.x == start.x);
  CHECK(t.segments.front().start.u == start.u);
  for (std::size_t i = 1; i < t.segments.size(); ++i) {
    CHECK(t.segments[i].start.x == t.segments[i - 1].end.x);
    CHECK(t.segments[i].start.z == t.segments[i - 1].end.z);
    CHECK(t.segments[i].start.u == t.segments[i - 1].end.u);
    CHECK(t.segments[i].start.w == t.segments[i - 1].end.w);
  }
  double sum = 0.0;
  for (const auto& s : t.segments) sum += s.energy_ws;
  CHECK(sum == t.total_energy_ws);
  CHECK(t.final_state().x == t.segments.back().end.x);
}

TEST_CASE("bad planner configurations are rejected") {
  PlannerConfig cfg;
  cfg.maneuver_set = tiny_set();
  FlightState target;
  target.x = 100.0;

  PlannerConfig bad = cfg;
  bad.maneuver_set.clear();
  CHECK_THROWS_AS(ornith::build_tree(launch(), target, bad, p, sc),
                  ornith::ConfigError);
  bad = cfg;
  bad.time_steps = {};
  CHECK_THROWS_AS(ornith::build_tree(launch(), target, bad, p, sc),
                  ornith::ConfigError);
  bad = cfg;
  bad.time_steps = {12.0, -1.0};
  CHECK_THROWS_AS(ornith::build_tree(launch(), target, bad, p, sc),
                  ornith::ConfigError);
  bad = cfg;
  bad.k_d = 0.0;
  CHECK_THROWS_AS(ornith::build_tree(launch(), target, bad, p, sc),
                  ornith::ConfigError);
  bad = cfg;
  bad.k_w = -2;
  CHECK_THROWS_AS(ornith::build_tree(launch(), target, bad, p, sc),
                  ornith::ConfigError);
  bad = cfg;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(ornith::build_tree(launch(), target, bad, p, sc),
                  ornith::ConfigError);
  bad = cfg;
  bad.maneuver_set[0].f_hz = -1.0;
  CHECK_THROWS_AS(ornith::build_tree(launch(), target, bad, p, sc),
                  ornith::ConfigError);

  // Target behind the start is a configuration error, not a search failure.
  FlightState behind;
  behind.x = -10.0;
  CHECK_THROWS_AS(ornith::build_tree(launch(), behind, cfg, p, sc),
                  ornith::ConfigError);
}

TEST_CASE("multiple segment durations expand the branching set") {
  PlannerConfig cfg;
  cfg.maneuver_set = {{0.0, 0.0}, {-3.0, 0.0}};
  cfg.time_steps = {8.0, 15.0};
  cfg.k_d = kInf;
  cfg.max_depth = 1;
  cfg.tolerance = 1e6;

  FlightState target;
  target.x = 4000.0;

  const PlanTree tree = ornith::build_tree(launch(), target, cfg, p, sc);
  std::set<double> durations;
  for (std::size_t i = 1; i < tree.nodes.size(); ++i)
    durations.insert(tree.nodes[i].duration_s);
  CHECK(durations == std::set<double>{8.0, 15.0});
}
