#ifndef ORNITH_TYPES_HPP
#define ORNITH_TYPES_HPP

#include <cmath>

namespace ornith {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Longitudinal flight state in nondimensional units.
///
/// Positions are scaled by the characteristic length, velocities by the
/// characteristic speed and the pitch rate by the characteristic time.
/// z grows downward: positive z means the vehicle has descended.
struct FlightState {
  double x = 0.0;      // horizontal position
  double z = 0.0;      // vertical position, positive down
  double u = 0.0;      // body-axis forward velocity
  double w = 0.0;      // body-axis downward velocity
  double theta = 0.0;  // pitch angle, rad (nose up positive)
  double q = 0.0;      // pitch rate

  double speed() const { return std::sqrt(u * u + w * w); }

  bool finite() const {
    return std::isfinite(x) && std::isfinite(z) && std::isfinite(u) &&
           std::isfinite(w) && std::isfinite(theta) && std::isfinite(q);
  }
};

/// Time derivative of FlightState, same component order and units.
struct StateDerivative {
  double x = 0.0;
  double z = 0.0;
  double u = 0.0;
  double w = 0.0;
  double theta = 0.0;
  double q = 0.0;
};

/// A fixed control setting held for the duration of one segment.
///
/// delta_deg is the tail deflection in degrees (kept in degrees so that
/// configuration round trips are exact); f_hz is the flapping frequency in
/// Hz, with f_hz == 0 meaning a pure glide.
struct Maneuver {
  double delta_deg = 0.0;
  double f_hz = 0.0;

  double delta_rad() const { return deg_to_rad(delta_deg); }
  bool gliding() const { return f_hz == 0.0; }

  friend bool operator==(const Maneuver& a, const Maneuver& b) {
    return a.delta_deg == b.delta_deg && a.f_hz == b.f_hz;
  }
  friend bool operator<(const Maneuver& a, const Maneuver& b) {
    if (a.delta_deg != b.delta_deg) return a.delta_deg < b.delta_deg;
    return a.f_hz < b.f_hz;
  }
};

}  // namespace ornith

#endif
