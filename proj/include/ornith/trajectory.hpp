#ifndef ORNITH_TRAJECTORY_HPP
#define ORNITH_TRAJECTORY_HPP

#include <string>
#include <vector>

#include "ornith/dynamics.hpp"
#include "ornith/energy.hpp"
#include "ornith/types.hpp"
#include "ornith/vehicle.hpp"

namespace ornith {

/// One constant-maneuver piece of a trajectory. States are nondimensional;
/// duration is in seconds and energy in watt seconds.
struct Segment {
  Maneuver maneuver;
  double duration_s = 0.0;
  double energy_ws = 0.0;
  FlightState start;
  FlightState end;
};

struct Trajectory {
  std::string planner;  // which search produced it
  FlightState start;
  std::vector<Segment> segments;
  double total_energy_ws = 0.0;

  FlightState final_state() const {
    return segments.empty() ? start : segments.back().end;
  }
  double total_duration_s() const {
    double t = 0.0;
    for (const Segment& s : segments) t += s.duration_s;
    return t;
  }
  std::size_t glide_segment_count() const {
    std::size_t n = 0;
    for (const Segment& s : segments) n += s.maneuver.gliding() ? 1 : 0;
    return n;
  }
};

/// Sums segment energies in path order. For a trajectory assembled from a
/// search tree this reproduces the node's accumulated energy bit for bit.
double trajectory_energy(const Trajectory& t);

/// Serializes the trajectory as JSON. Output is deterministic: same
/// trajectory, same bytes. No timestamps or host data are included.
std::string trajectory_to_json(const Trajectory& t);
Trajectory trajectory_from_json(const std::string& text);

/// Re-integrates the trajectory's maneuver schedule and writes one CSV row
/// per integrator substep with header t,x,z,u,w,theta,q. Columns are
/// dimensional: seconds, meters, meters per second, radians, radians per
/// second.
std::string trajectory_time_series_csv(const Trajectory& t,
                                       const VehicleParams& p,
                                       const CharacteristicScales& sc,
                                       const IntegratorConfig& cfg = {});

}  // namespace ornith

#endif
