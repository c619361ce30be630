#ifndef ORNITH_AERO_HPP
#define ORNITH_AERO_HPP

#include <complex>

#include "ornith/theodorsen.hpp"
#include "ornith/types.hpp"
#include "ornith/vehicle.hpp"

namespace ornith {

/// Angle of attack atan2(w, u). Throws DegenerateStateError when u = w = 0.
double angle_of_attack(const FlightState& s);

/// Full set of force coefficients entering the equations of motion.
struct AeroCoefficients {
  double C_L = 0.0;   // wing lift
  double C_T = 0.0;   // wing thrust (zero while gliding)
  double C_D = 0.0;   // wing drag
  double C_Lt = 0.0;  // tail lift
  double C_Dt = 0.0;  // tail drag
};

struct WingCoeffs {
  double C_L = 0.0;
  double C_T = 0.0;
};

/// Wing lift with the wing fixed (gliding flight).
///
/// The quasi-steady effective angle alpha + (1.5 alpha_dot - lw_ratio q)/u_b
/// is saturated at the wing stall angle before the thin-airfoil slope and
/// finite-span correction are applied, so |C_L| never exceeds its stall
/// value.
double wing_lift_glide(double alpha, double alpha_dot, double q, double u_b,
                       const VehicleParams& p);

/// Flapping-wing lift and thrust at reduced frequency k and flapping phase
/// (2 pi f t), with the circulatory gains supplied by the caller:
/// C = F + iG scales lift, C1 = F1 + iG1 scales thrust.
///
/// The circulatory effective angle k h0 (G cos + F sin) + alpha is saturated
/// at the wing stall angle; the noncirculatory (added mass) term is not.
/// Thrust tilts the saturated lift by the raw angle of attack.
WingCoeffs wing_flap_coeffs(double alpha, double k, double phase,
                            std::complex<double> C, std::complex<double> C1,
                            const VehicleParams& p);

/// Flapping-wing coefficients for a state and maneuver at segment-local
/// nondimensional time t_nd. Computes k = 2 pi f_nd / u_b and evaluates the
/// circulatory gains (Theodorsen by default, a custom thrust closure if c1
/// is set). Throws std::invalid_argument for a gliding maneuver.
WingCoeffs wing_coeffs_flap(const FlightState& s, const Maneuver& m,
                            double t_nd, const VehicleParams& p,
                            const CharacteristicScales& sc,
                            const CirculationFn& c1 = {});

/// Tail lift with downwash attenuation, deflection and rate terms. The
/// effective angle is saturated at the tail stall angle.
double tail_lift(double alpha, double delta_rad, double alpha_dot, double q,
                 double u_b, const VehicleParams& p);

struct DragCoeffs {
  double C_D = 0.0;
  double C_Dt = 0.0;
};

/// Parasitic plus induced drag for wing and tail.
DragCoeffs drag_coeffs(double C_L, double C_Lt, const VehicleParams& p);

/// Mode-dispatched full coefficient set: gliding wing model when f = 0,
/// flapping model otherwise, tail and drag always.
AeroCoefficients aero_coefficients(const FlightState& s, const Maneuver& m,
                                   double t_nd, double alpha_dot,
                                   const VehicleParams& p,
                                   const CharacteristicScales& sc,
                                   const CirculationFn& c1 = {});

}  // namespace ornith

#endif
