#ifndef ORNITH_DYNAMICS_HPP
#define ORNITH_DYNAMICS_HPP

#include <functional>

#include "ornith/aero.hpp"
#include "ornith/types.hpp"
#include "ornith/vehicle.hpp"

namespace ornith {

/// Newton-Euler right-hand side given a precomputed coefficient set.
///
/// Body axes: u forward, w down, theta nose-up, q = d theta / dt. The plane
/// coordinates advance as dx = u cos(theta) + w sin(theta),
/// dz = -u sin(theta) + w cos(theta) with z positive down. All quantities
/// nondimensional.
StateDerivative newton_euler_rhs(const FlightState& s,
                                 const AeroCoefficients& c,
                                 const VehicleParams& p);

/// Full state derivative for a maneuver at segment-local time t_nd.
/// alpha_dot supplies the angle-of-attack rate appearing in the wing and
/// tail rate terms; the caller chooses how to estimate it.
StateDerivative state_derivative(const FlightState& s, const Maneuver& m,
                                 double t_nd, double alpha_dot,
                                 const VehicleParams& p,
                                 const CharacteristicScales& sc,
                                 const CirculationFn& c1 = {});

/// How the alpha_dot feedback inside the coefficients is closed.
///
/// kConsistent solves the scalar fixed point alpha_dot = g(alpha_dot)
/// implied by the translational equations at every derivative evaluation,
/// keeping the right-hand side a pure function of (state, t) so the
/// integrator retains its full order. kLagged reuses the finite difference
/// of alpha across the previous substep (zero at segment start); it is
/// cheaper but first-order accurate.
enum class AlphaDotMode { kConsistent, kLagged };

struct IntegratorConfig {
  /// Substep ceiling in seconds for gliding segments; flapping segments use
  /// min(max_substep_s, 1 / (steps_per_flap_period * f)).
  double max_substep_s = 0.01;
  int steps_per_flap_period = 20;
  /// When positive, forces the exact substep count and ignores the rules
  /// above (used by convergence studies).
  int substeps_override = 0;
  AlphaDotMode alpha_dot_mode = AlphaDotMode::kConsistent;
  /// Optional thrust circulation closure; empty means Theodorsen.
  CirculationFn c1 = {};
  /// Testing hook: when set, every derivative evaluation uses exactly these
  /// coefficients instead of the aerodynamic model.
  const AeroCoefficients* forced_coeffs = nullptr;
};

int substep_count(double duration_s, double f_hz, const IntegratorConfig& cfg);

/// Solves alpha_dot = g(alpha_dot) for the instantaneous angle-of-attack
/// rate consistent with the translational accelerations. alpha_dot enters
/// the coefficients through affine effective angles (plus a mild quadratic
/// through induced drag), so a secant iteration from the supplied seed
/// converges in a few steps.
double consistent_alpha_dot(const FlightState& s, const Maneuver& m,
                            double t_nd, double seed, const VehicleParams& p,
                            const CharacteristicScales& sc,
                            const IntegratorConfig& cfg);

/// Observer invoked at every accepted substep boundary, including the
/// initial state: (segment-local nondimensional time, state).
using StateRecorder = std::function<void(double, const FlightState&)>;

/// Integrates one maneuver segment of duration_s seconds with classical
/// fixed-step RK4 and returns the final state.
///
/// The flapping phase 2 pi f t advances continuously across substeps and is
/// zero at segment start. Throws DivergenceError if any substep produces a
/// non-finite state and propagates DegenerateStateError if the airspeed
/// reaches zero.
FlightState integrate(const FlightState& start, const Maneuver& m,
                      double duration_s, const VehicleParams& p,
                      const CharacteristicScales& sc,
                      const IntegratorConfig& cfg = {},
                      const StateRecorder& recorder = {});

}  // namespace ornith

#endif
