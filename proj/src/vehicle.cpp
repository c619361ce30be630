#include "ornith/vehicle.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ornith/errors.hpp"

namespace ornith {

void CharacteristicScales::validate() const {
  if (!(U_c > 0.0) || !(L_c > 0.0) || !(t_c > 0.0))
    throw ConfigError("characteristic scales must be positive");
  const double implied = L_c / t_c;
  if (std::abs(implied - U_c) > 0.01 * U_c)
    throw ConfigError("inconsistent scales: L_c / t_c deviates from U_c by more than 1%");
}

void VehicleParams::validate() const {
  if (!(M_nd > 0.0)) throw ConfigError("M_nd must be positive");
  if (!(chi > 0.0)) throw ConfigError("chi must be positive");
  if (!(AR > 0.0) || !(AR_t > 0.0)) throw ConfigError("aspect ratios must be positive");
  if (!(Lambda >= 0.0)) throw ConfigError("Lambda must be >= 0");
  if (!(C_D0 >= 0.0) || !(C_D0t >= 0.0) || !(Li >= 0.0))
    throw ConfigError("drag offsets must be >= 0");
  if (!(h0 >= 0.0)) throw ConfigError("h0 must be >= 0");
  if (!(eps_alpha >= 0.0) || !(eps_alpha < 1.0))
    throw ConfigError("eps_alpha must lie in [0, 1)");
  if (!(stall_wing > 0.0) || !(stall_tail > 0.0))
    throw ConfigError("stall angles must be positive");
}

namespace {

double take(nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ConfigError(std::string("vehicle key '") + key + "' must be a number");
  double v = j[key].get<double>();
  j.erase(key);
  return v;
}

}  // namespace

Vehicle parse_vehicle(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("vehicle JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("vehicle document must be a JSON object");

  Vehicle v;
  v.params.M_nd = take(j, "M_nd", v.params.M_nd);
  v.params.Lambda = take(j, "Lambda", v.params.Lambda);
  v.params.L_nd = take(j, "L_nd", v.params.L_nd);
  v.params.R_HL = take(j, "R_HL", v.params.R_HL);
  v.params.chi = take(j, "chi", v.params.chi);
  v.params.C_D0 = take(j, "C_D0", v.params.C_D0);
  v.params.C_D0t = take(j, "C_D0t", v.params.C_D0t);
  v.params.AR = take(j, "AR", v.params.AR);
  v.params.AR_t = take(j, "AR_t", v.params.AR_t);
  v.params.Li = take(j, "Li", v.params.Li);
  v.params.eps_alpha = take(j, "eps_alpha", v.params.eps_alpha);
  v.params.h0 = take(j, "h0", v.params.h0);
  v.params.lw_ratio = take(j, "lw_ratio", v.params.lw_ratio);
  v.params.lt_ratio = take(j, "lt_ratio", v.params.lt_ratio);
  v.params.stall_wing = take(j, "stall_wing", v.params.stall_wing);
  v.params.stall_tail = take(j, "stall_tail", v.params.stall_tail);
  v.scales.U_c = take(j, "U_c", v.scales.U_c);
  v.scales.L_c = take(j, "L_c", v.scales.L_c);
  v.scales.t_c = take(j, "t_c", v.scales.t_c);

  if (!j.empty())
    throw ConfigError("unknown vehicle key: " + j.begin().key());

  v.params.validate();
  v.scales.validate();
  return v;
}

Vehicle load_vehicle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open vehicle file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_vehicle(buf.str());
}

FlightState to_nondimensional(const FlightState& d, const CharacteristicScales& sc) {
  FlightState s;
  s.x = sc.to_nd_length(d.x);
  s.z = sc.to_nd_length(d.z);
  s.u = sc.to_nd_speed(d.u);
  s.w = sc.to_nd_speed(d.w);
  s.theta = d.theta;
  s.q = d.q * sc.t_c;
  return s;
}

FlightState to_dimensional(const FlightState& nd, const CharacteristicScales& sc) {
  FlightState s;
  s.x = sc.to_m(nd.x);
  s.z = sc.to_m(nd.z);
  s.u = sc.to_ms(nd.u);
  s.w = sc.to_ms(nd.w);
  s.theta = nd.theta;
  s.q = nd.q / sc.t_c;
  return s;
}

}  // namespace ornith
