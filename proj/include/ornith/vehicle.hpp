#ifndef ORNITH_VEHICLE_HPP
#define ORNITH_VEHICLE_HPP

#include <string>

#include "ornith/types.hpp"

namespace ornith {

/// Reference quantities used to nondimensionalize the equations of motion.
///
/// U_c is the speed at which dynamic pressure carries the full weight,
/// L_c is the half chord and t_c = L_c / U_c. Loading validates that
/// L_c / t_c agrees with U_c to within 1%.
struct CharacteristicScales {
  double U_c = 4.26;    // m/s
  double L_c = 0.135;   // m
  double t_c = 0.0317;  // s

  double to_nd_length(double m) const { return m / L_c; }
  double to_nd_speed(double ms) const { return ms / U_c; }
  double to_nd_time(double s) const { return s / t_c; }
  double to_nd_frequency(double hz) const { return hz * t_c; }
  double to_m(double nd) const { return nd * L_c; }
  double to_ms(double nd) const { return nd * U_c; }
  double to_s(double nd) const { return nd * t_c; }

  void validate() const;
};

/// Nondimensional vehicle constants of the flapping-wing platform plus the
/// closure parameters of the aerodynamic model.
///
/// lw_ratio and lt_ratio are the wing and tail lever arms divided by the
/// half chord, signed positive when the centre of gravity lies behind the
/// surface's aerodynamic centre (so lt_ratio is negative for a tail mounted
/// behind the CG). h0, eps_alpha, lw_ratio and lt_ratio are calibration
/// parameters: defaults are physically reasoned, not measured.
struct VehicleParams {
  double M_nd = 6.85;      // mass number
  double Lambda = 0.278;   // tail/wing force scaling ratio
  double L_nd = -15.5;     // tail moment lever, half chords
  double R_HL = 1.92;      // wing horizontal-force moment lever, half chords
  double chi = 0.0132;     // pitch inertia number
  double C_D0 = 0.018;     // wing parasitic drag coefficient
  double C_D0t = 0.021;    // tail parasitic drag coefficient
  double AR = 4.44;        // wing aspect ratio
  double AR_t = 2.35;      // tail aspect ratio
  double Li = 0.0051;      // body drag coefficient
  double eps_alpha = 0.3;  // downwash derivative at the tail
  double h0 = 0.65;        // plunge amplitude, half chords
  double lw_ratio = 1.92;  // 2*l_w/c, wing lever over half chord
  double lt_ratio = -15.5; // 2*l_t/c, tail lever over half chord
  double stall_wing = 10.0;  // wing lift saturation angle, degrees
  double stall_tail = 25.0;  // tail lift saturation angle, degrees

  double stall_wing_rad() const { return deg_to_rad(stall_wing); }
  double stall_tail_rad() const { return deg_to_rad(stall_tail); }

  void validate() const;
};

/// A vehicle document: parameters plus scales, loaded from one JSON file.
struct Vehicle {
  VehicleParams params;
  CharacteristicScales scales;
};

/// Parses a vehicle JSON document with keys matching the field names above.
/// Missing keys keep their defaults; unknown keys are rejected.
/// Throws ConfigError on parse failures or invariant violations.
Vehicle load_vehicle(const std::string& path);
Vehicle parse_vehicle(const std::string& json_text);

FlightState to_nondimensional(const FlightState& dimensional,
                              const CharacteristicScales& sc);
FlightState to_dimensional(const FlightState& nd,
                           const CharacteristicScales& sc);

}  // namespace ornith

#endif
