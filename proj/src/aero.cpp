#include "ornith/aero.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ornith/errors.hpp"

namespace ornith {

// Past this reduced frequency the unsteady-lift model has no physical meaning
// and the Bessel series loses double precision.
constexpr double kMaxReducedFrequency = 25.0;

double angle_of_attack(const FlightState& s) {
  if (s.u == 0.0 && s.w == 0.0)
    throw DegenerateStateError("angle of attack undefined at zero airspeed");
  return std::atan2(s.w, s.u);
}

double wing_lift_glide(double alpha, double alpha_dot, double q, double u_b,
                       const VehicleParams& p) {
  double eff = alpha + (1.5 * alpha_dot - p.lw_ratio * q) / u_b;
  eff = std::clamp(eff, -p.stall_wing_rad(), p.stall_wing_rad());
  return 2.0 * kPi * eff * p.AR / (p.AR + 2.0);
}

WingCoeffs wing_flap_coeffs(double alpha, double k, double phase,
                            std::complex<double> C, std::complex<double> C1,
                            const VehicleParams& p) {
  const double F = C.real(), G = C.imag();
  const double F1 = C1.real(), G1 = C1.imag();
  const double s = std::sin(phase), c = std::cos(phase);
  const double kh = k * p.h0;
  const double span_l = p.AR / (p.AR + 2.0);
  const double span_m = p.AR / (p.AR + 1.0);

  double eff = kh * (G * c + F * s) + alpha;
  eff = std::clamp(eff, -p.stall_wing_rad(), p.stall_wing_rad());

  WingCoeffs out;
  out.C_L = 2.0 * kPi * eff * span_l + kPi * k * k * p.h0 * c * span_m;
  out.C_T = 4.0 * kh * kh * s * (F1 * c - G1 * s) * span_l - alpha * out.C_L;
  return out;
}

WingCoeffs wing_coeffs_flap(const FlightState& s, const Maneuver& m,
                            double t_nd, const VehicleParams& p,
                            const CharacteristicScales& sc,
                            const CirculationFn& c1) {
  if (m.gliding())
    throw std::invalid_argument("wing_coeffs_flap requires f > 0");
  const double u_b = s.speed();
  if (u_b == 0.0)
    throw DegenerateStateError("flapping coefficients undefined at zero airspeed");
  const double f_nd = sc.to_nd_frequency(m.f_hz);
  const double k = 2.0 * kPi * f_nd / u_b;
  // Unsteady thin-airfoil theory is only trustworthy at moderate reduced
  // frequency; airspeed collapse drives k beyond any physical regime, so
  // treat it as a degenerate state.
  if (k > kMaxReducedFrequency)
    throw DegenerateStateError("reduced frequency beyond flapping model validity");
  const double phase = 2.0 * kPi * f_nd * t_nd;
  const std::complex<double> C = theodorsen(k);
  const std::complex<double> C1 = c1 ? c1(k) : C;
  return wing_flap_coeffs(angle_of_attack(s), k, phase, C, C1, p);
}

double tail_lift(double alpha, double delta_rad, double alpha_dot, double q,
                 double u_b, const VehicleParams& p) {
  double eff = (1.0 - p.eps_alpha) * alpha + delta_rad +
               (1.5 * alpha_dot - p.lt_ratio * q) / u_b;
  eff = std::clamp(eff, -p.stall_tail_rad(), p.stall_tail_rad());
  return 0.5 * kPi * p.AR_t * eff;
}

DragCoeffs drag_coeffs(double C_L, double C_Lt, const VehicleParams& p) {
  DragCoeffs d;
  d.C_D = p.C_D0 + C_L * C_L / (kPi * p.AR);
  d.C_Dt = p.C_D0t + C_Lt * C_Lt / (kPi * p.AR_t);
  return d;
}

AeroCoefficients aero_coefficients(const FlightState& s, const Maneuver& m,
                                   double t_nd, double alpha_dot,
                                   const VehicleParams& p,
                                   const CharacteristicScales& sc,
                                   const CirculationFn& c1) {
  const double alpha = angle_of_attack(s);
  const double u_b = s.speed();

  AeroCoefficients out;
  if (m.gliding()) {
    out.C_L = wing_lift_glide(alpha, alpha_dot, s.q, u_b, p);
    out.C_T = 0.0;
  } else {
    const WingCoeffs wing = wing_coeffs_flap(s, m, t_nd, p, sc, c1);
    out.C_L = wing.C_L;
    out.C_T = wing.C_T;
  }
  out.C_Lt = tail_lift(alpha, m.delta_rad(), alpha_dot, s.q, u_b, p);
  const DragCoeffs d = drag_coeffs(out.C_L, out.C_Lt, p);
  out.C_D = d.C_D;
  out.C_Dt = d.C_Dt;
  return out;
}

}  // namespace ornith
