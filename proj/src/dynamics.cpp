#include "ornith/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "ornith/errors.hpp"

namespace ornith {

StateDerivative newton_euler_rhs(const FlightState& s,
                                 const AeroCoefficients& c,
                                 const VehicleParams& p) {
  const double alpha = angle_of_attack(s);
  const double ub2 = s.u * s.u + s.w * s.w;
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double st = std::sin(s.theta), ct = std::cos(s.theta);
  const double twoM = 2.0 * p.M_nd;

  // Force components normal and parallel to the airspeed vector.
  const double lift_sum = c.C_L + p.Lambda * c.C_Lt;
  const double axial = c.C_T - c.C_D - p.Li - p.Lambda * c.C_Dt;

  StateDerivative d;
  d.u = (ub2 * (lift_sum * sa + axial * ca) - st) / twoM - s.q * s.w;
  d.w = (ub2 * (-lift_sum * ca + axial * sa) + ct) / twoM + s.q * s.u;
  d.q = p.chi * ub2 *
        (c.C_L * ca - (c.C_T - c.C_D) * sa +
         p.L_nd * p.Lambda * (c.C_Lt * ca + c.C_Dt * sa) -
         p.R_HL * (c.C_L * sa + (c.C_T - c.C_D) * ca));
  d.theta = s.q;
  d.x = s.u * ct + s.w * st;
  d.z = -s.u * st + s.w * ct;
  return d;
}

StateDerivative state_derivative(const FlightState& s, const Maneuver& m,
                                 double t_nd, double alpha_dot,
                                 const VehicleParams& p,
                                 const CharacteristicScales& sc,
                                 const CirculationFn& c1) {
  return newton_euler_rhs(s, aero_coefficients(s, m, t_nd, alpha_dot, p, sc, c1), p);
}

namespace {

/// Wing terms that do not depend on alpha_dot, computed once per evaluation.
struct FrozenWing {
  bool gliding = true;
  double alpha = 0.0;
  double u_b = 0.0;
  WingCoeffs flap;  // valid when !gliding
};

FrozenWing freeze_wing(const FlightState& s, const Maneuver& m, double t_nd,
                       const VehicleParams& p, const CharacteristicScales& sc,
                       const CirculationFn& c1) {
  FrozenWing fw;
  fw.alpha = angle_of_attack(s);
  fw.u_b = s.speed();
  fw.gliding = m.gliding();
  if (!fw.gliding) fw.flap = wing_coeffs_flap(s, m, t_nd, p, sc, c1);
  return fw;
}

/// d alpha / dt implied by the translational equations when the rate terms
/// inside the lift coefficients are evaluated at alpha_dot = d:
///
///   alpha_dot = (u w' - w u') / U^2
///             = q + (u cos(theta) + w sin(theta) - lift_sum U^3) / (2 M U^2)
///
/// The axial force (thrust, drag, body drag) cancels out of u w' - w u'
/// exactly, so only the lift terms enter. Within one saturation region the
/// map is affine in d, which makes the secant solve below exact.
double alpha_dot_map(double d, const FrozenWing& fw, const FlightState& s,
                     const Maneuver& m, const VehicleParams& p) {
  const double C_L = fw.gliding
                         ? wing_lift_glide(fw.alpha, d, s.q, fw.u_b, p)
                         : fw.flap.C_L;
  const double C_Lt = tail_lift(fw.alpha, m.delta_rad(), d, s.q, fw.u_b, p);
  const double lift_sum = C_L + p.Lambda * C_Lt;
  const double ub2 = fw.u_b * fw.u_b;
  return s.q + (s.u * std::cos(s.theta) + s.w * std::sin(s.theta) -
                lift_sum * ub2 * fw.u_b) /
                   (2.0 * p.M_nd * ub2);
}

}  // namespace

double consistent_alpha_dot(const FlightState& s, const Maneuver& m,
                            double t_nd, double seed, const VehicleParams& p,
                            const CharacteristicScales& sc,
                            const IntegratorConfig& cfg) {
  const FrozenWing fw = freeze_wing(s, m, t_nd, p, sc, cfg.c1);

  double d0 = seed;
  double f0 = alpha_dot_map(d0, fw, s, m, p) - d0;
  if (f0 == 0.0) return d0;
  double d1 = d0 + f0;  // Picard step supplies the second secant point
  for (int it = 0; it < 16; ++it) {
    const double f1 = alpha_dot_map(d1, fw, s, m, p) - d1;
    if (std::abs(f1) <= 1e-13 * std::max(1.0, std::abs(d1))) return d1;
    const double denom = f1 - f0;
    double d2 = (denom != 0.0) ? d1 - f1 * (d1 - d0) / denom : d1 + f1;
    if (!std::isfinite(d2)) d2 = d1 + f1;
    d0 = d1;
    f0 = f1;
    d1 = d2;
  }
  return d1;
}

int substep_count(double duration_s, double f_hz, const IntegratorConfig& cfg) {
  if (cfg.substeps_override > 0) return cfg.substeps_override;
  double h_max = cfg.max_substep_s;
  if (f_hz > 0.0)
    h_max = std::min(h_max, 1.0 / (cfg.steps_per_flap_period * f_hz));
  const int n = static_cast<int>(std::ceil(duration_s / h_max));
  return n < 1 ? 1 : n;
}

namespace {

FlightState add_scaled(const FlightState& s, const StateDerivative& d,
                       double h) {
  FlightState r;
  r.x = s.x + h * d.x;
  r.z = s.z + h * d.z;
  r.u = s.u + h * d.u;
  r.w = s.w + h * d.w;
  r.theta = s.theta + h * d.theta;
  r.q = s.q + h * d.q;
  return r;
}

}  // namespace

FlightState integrate(const FlightState& start, const Maneuver& m,
                      double duration_s, const VehicleParams& p,
                      const CharacteristicScales& sc,
                      const IntegratorConfig& cfg,
                      const StateRecorder& recorder) {
  if (!(duration_s >= 0.0))
    throw std::invalid_argument("integrate: duration must be >= 0");
  if (!(m.f_hz >= 0.0))
    throw std::invalid_argument("integrate: flapping frequency must be >= 0");

  const double T = sc.to_nd_time(duration_s);
  const int n = substep_count(duration_s, m.f_hz, cfg);
  const double h = T / n;

  FlightState s = start;
  double lag = 0.0;  // lagged alpha_dot estimate, zero at segment start
  double alpha_prev = angle_of_attack(s);
  double seed = 0.0;  // warm start for the consistent solve

  const bool consistent =
      cfg.alpha_dot_mode == AlphaDotMode::kConsistent && !cfg.forced_coeffs;

  auto rhs = [&](const FlightState& st, double t_local) -> StateDerivative {
    if (cfg.forced_coeffs) return newton_euler_rhs(st, *cfg.forced_coeffs, p);
    double ad = lag;
    if (consistent) {
      ad = consistent_alpha_dot(st, m, t_local, seed, p, sc, cfg);
      seed = ad;
    }
    return state_derivative(st, m, t_local, ad, p, sc, cfg.c1);
  };

  if (recorder) recorder(0.0, s);
  for (int j = 0; j < n; ++j) {
    const double tau = j * h;
    const StateDerivative k1 = rhs(s, tau);
    const StateDerivative k2 = rhs(add_scaled(s, k1, 0.5 * h), tau + 0.5 * h);
    const StateDerivative k3 = rhs(add_scaled(s, k2, 0.5 * h), tau + 0.5 * h);
    const StateDerivative k4 = rhs(add_scaled(s, k3, h), tau + h);

    FlightState next = s;
    next.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    next.z += h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
    next.u += h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    next.w += h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
    next.theta += h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
    next.q += h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);

    if (!next.finite())
      throw DivergenceError("integration diverged to a non-finite state");

    const double alpha_now = angle_of_attack(next);
    if (h > 0.0) lag = (alpha_now - alpha_prev) / h;
    alpha_prev = alpha_now;
    s = next;
    if (recorder) recorder((j + 1) * h, s);
  }
  return s;
}

}  // namespace ornith
