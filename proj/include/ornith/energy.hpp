#ifndef ORNITH_ENERGY_HPP
#define ORNITH_ENERGY_HPP

#include <stdexcept>

#include "ornith/types.hpp"

namespace ornith {

/// Power model of one maneuver: an aerodynamic term cubic in flapping
/// frequency plus a constant electronics draw. Energy is in watt seconds.
struct EnergyModel {
  double K_aero = 2.5;  // W / Hz^3
  double c_r = 5.0;     // W

  void validate() const {
    if (!(K_aero >= 0.0) || !(c_r >= 0.0))
      throw std::invalid_argument("energy model constants must be >= 0");
  }
};

/// E = duration * (K_aero f^3 + c_r); duration in seconds, f in Hz.
inline double maneuver_energy(const Maneuver& m, double duration_s,
                              const EnergyModel& em = {}) {
  if (!(duration_s >= 0.0))
    throw std::invalid_argument("maneuver duration must be >= 0");
  return duration_s * (em.K_aero * m.f_hz * m.f_hz * m.f_hz + em.c_r);
}

}  // namespace ornith

#endif
