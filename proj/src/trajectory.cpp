#include "ornith/trajectory.hpp"

#include <cstdio>
#include <string>

#include <json.hpp>

#include "ornith/errors.hpp"

namespace ornith {

double trajectory_energy(const Trajectory& t) {
  double e = 0.0;
  for (const Segment& s : t.segments) e += s.energy_ws;
  return e;
}

namespace {

using json = nlohmann::ordered_json;

json state_to_json(const FlightState& s) {
  return json{{"x", s.x},         {"z", s.z}, {"u", s.u},
              {"w", s.w},         {"theta", s.theta}, {"q", s.q}};
}

FlightState state_from_json(const json& j) {
  FlightState s;
  s.x = j.at("x").get<double>();
  s.z = j.at("z").get<double>();
  s.u = j.at("u").get<double>();
  s.w = j.at("w").get<double>();
  s.theta = j.at("theta").get<double>();
  s.q = j.at("q").get<double>();
  return s;
}

}  // namespace

std::string trajectory_to_json(const Trajectory& t) {
  json j;
  j["planner"] = t.planner;
  j["start"] = state_to_json(t.start);
  json segs = json::array();
  for (const Segment& s : t.segments) {
    json seg;
    seg["maneuver"] = json{{"delta_deg", s.maneuver.delta_deg},
                           {"f_hz", s.maneuver.f_hz}};
    seg["duration_s"] = s.duration_s;
    seg["energy_ws"] = s.energy_ws;
    seg["start"] = state_to_json(s.start);
    seg["end"] = state_to_json(s.end);
    segs.push_back(seg);
  }
  j["segments"] = segs;
  j["total_energy_ws"] = t.total_energy_ws;
  j["total_duration_s"] = t.total_duration_s();
  j["final_state"] = state_to_json(t.final_state());
  return j.dump(2) + "\n";
}

Trajectory trajectory_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("trajectory JSON parse error: ") + e.what());
  }
  Trajectory t;
  try {
    t.planner = j.at("planner").get<std::string>();
    t.start = state_from_json(j.at("start"));
    for (const json& seg : j.at("segments")) {
      Segment s;
      s.maneuver.delta_deg = seg.at("maneuver").at("delta_deg").get<double>();
      s.maneuver.f_hz = seg.at("maneuver").at("f_hz").get<double>();
      s.duration_s = seg.at("duration_s").get<double>();
      s.energy_ws = seg.at("energy_ws").get<double>();
      s.start = state_from_json(seg.at("start"));
      s.end = state_from_json(seg.at("end"));
      t.segments.push_back(s);
    }
    t.total_energy_ws = j.at("total_energy_ws").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("trajectory JSON missing field: ") + e.what());
  }
  return t;
}

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string trajectory_time_series_csv(const Trajectory& t,
                                       const VehicleParams& p,
                                       const CharacteristicScales& sc,
                                       const IntegratorConfig& cfg) {
  std::string out = "t,x,z,u,w,theta,q\n";
  FlightState s = t.start;
  double t_offset = 0.0;
  bool first_segment = true;
  for (const Segment& seg : t.segments) {
    const StateRecorder rec = [&](double tau_nd, const FlightState& st) {
      if (tau_nd == 0.0 && !first_segment) return;  // boundary row already written
      const FlightState d = to_dimensional(st, sc);
      append_number(out, t_offset + sc.to_s(tau_nd));
      out += ',';
      append_number(out, d.x);
      out += ',';
      append_number(out, d.z);
      out += ',';
      append_number(out, d.u);
      out += ',';
      append_number(out, d.w);
      out += ',';
      append_number(out, d.theta);
      out += ',';
      append_number(out, d.q);
      out += '\n';
    };
    s = integrate(s, seg.maneuver, seg.duration_s, p, sc, cfg, rec);
    t_offset += seg.duration_s;
    first_segment = false;
  }
  if (t.segments.empty()) {
    const FlightState d = to_dimensional(s, sc);
    append_number(out, 0.0);
    for (double v : {d.x, d.z, d.u, d.w, d.theta, d.q}) {
      out += ',';
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace ornith
