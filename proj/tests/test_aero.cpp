#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "oracles.hpp"
#include "ornith/aero.hpp"
#include "ornith/errors.hpp"
#include "ornith/theodorsen.hpp"
#include "ornith/types.hpp"
#include "ornith/vehicle.hpp"

using ornith::AeroCoefficients;
using ornith::CharacteristicScales;
using ornith::FlightState;
using ornith::Maneuver;
using ornith::VehicleParams;
using ornith::deg_to_rad;
using ornith::kPi;

namespace {
const VehicleParams p{};  // catalogue defaults
const CharacteristicScales sc{};
}  // namespace

TEST_CASE("angle of attack follows atan2 and rejects zero airspeed") {
  FlightState s;
  s.u = 1.0;
  s.w = 0.1;
  CHECK(ornith::angle_of_attack(s) == doctest::Approx(std::atan2(0.1, 1.0)));
  s.u = -0.3;
  s.w = 0.0;
  CHECK(ornith::angle_of_attack(s) == doctest::Approx(kPi));
  s.u = 0.0;
  CHECK_THROWS_AS(ornith::angle_of_attack(s), ornith::DegenerateStateError);
}

TEST_CASE("gliding lift is thin-airfoil slope times finite-span factor") {
  const double alpha = deg_to_rad(5.0);
  const double want = 2.0 * kPi * alpha * p.AR / (p.AR + 2.0);
  CHECK(ornith::wing_lift_glide(alpha, 0.0, 0.0, 1.0, p) ==
        doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("gliding lift saturates at the stall angle") {
  const double stall = deg_to_rad(p.stall_wing);
  const double c_l_stall = 2.0 * kPi * stall * p.AR / (p.AR + 2.0);
  CHECK(ornith::wing_lift_glide(deg_to_rad(20.0), 0.0, 0.0, 1.0, p) ==
        doctest::Approx(c_l_stall));
  CHECK(ornith::wing_lift_glide(deg_to_rad(-20.0), 0.0, 0.0, 1.0, p) ==
        doctest::Approx(-c_l_stall));
  // The rate terms can push an unstalled alpha past the limit too.
  CHECK(ornith::wing_lift_glide(deg_to_rad(9.0), 0.5, 0.0, 1.0, p) ==
        doctest::Approx(c_l_stall));
}

TEST_CASE("gliding lift rate terms divide by airspeed") {
  const double alpha_dot = 0.02, q = 0.01, u_b = 0.8;
  const double eff = (1.5 * alpha_dot - p.lw_ratio * q) / u_b;
  CHECK(ornith::wing_lift_glide(0.0, alpha_dot, q, u_b, p) ==
        doctest::Approx(2.0 * kPi * eff * p.AR / (p.AR + 2.0)).epsilon(1e-14));
}

TEST_CASE("tail lift applies downwash, deflection and rate terms") {
  const double alpha = deg_to_rad(4.0);
  const double delta = deg_to_rad(-3.0);
  const double eff = (1.0 - p.eps_alpha) * alpha + delta;
  CHECK(ornith::tail_lift(alpha, delta, 0.0, 0.0, 1.0, p) ==
        doctest::Approx(0.5 * kPi * p.AR_t * eff).epsilon(1e-14));

  const double alpha_dot = -0.03, q = 0.02, u_b = 1.2;
  const double eff_rates = (1.5 * alpha_dot - p.lt_ratio * q) / u_b;
  CHECK(ornith::tail_lift(0.0, 0.0, alpha_dot, q, u_b, p) ==
        doctest::Approx(0.5 * kPi * p.AR_t * eff_rates).epsilon(1e-14));
}

TEST_CASE("tail lift saturates at the tail stall angle") {
  const double stall = deg_to_rad(p.stall_tail);
  CHECK(ornith::tail_lift(0.0, deg_to_rad(40.0), 0.0, 0.0, 1.0, p) ==
        doctest::Approx(0.5 * kPi * p.AR_t * stall));
  CHECK(ornith::tail_lift(0.0, deg_to_rad(-40.0), 0.0, 0.0, 1.0, p) ==
        doctest::Approx(-0.5 * kPi * p.AR_t * stall));
}

TEST_CASE("drag is parasitic plus induced for both surfaces") {
  const auto d = ornith::drag_coeffs(1.0, 0.5, p);
  CHECK(d.C_D == doctest::Approx(p.C_D0 + 1.0 / (kPi * p.AR)).epsilon(1e-14));
  CHECK(d.C_Dt ==
        doctest::Approx(p.C_D0t + 0.25 / (kPi * p.AR_t)).epsilon(1e-14));
  // Induced drag is even in lift.
  CHECK(ornith::drag_coeffs(-1.0, -0.5, p).C_D == d.C_D);
}

TEST_CASE("flapping coefficients match a hand-assembled model") {
  // Recompute lift and thrust from scratch at a few (alpha, k, phase)
  // points: circulatory effective angle from the plunge velocity, clamped,
  // plus the unclamped added-mass term; thrust from the suction term tilted
  // back by alpha.
  const double span_l = p.AR / (p.AR + 2.0);
  const double span_m = p.AR / (p.AR + 1.0);
  for (double alpha : {0.0, deg_to_rad(4.0), deg_to_rad(-6.0)}) {
    for (double k : {0.2, 0.7, 1.5}) {
      for (double phase : {0.0, 1.0, 2.5, 4.5}) {
        const std::complex<double> C = ornith::theodorsen(k);
        const double F = C.real(), G = C.imag();
        const double cp = std::cos(phase), sp = std::sin(phase);

        double eff = k * p.h0 * (G * cp + F * sp) + alpha;
        eff = std::clamp(eff, -p.stall_wing_rad(), p.stall_wing_rad());
        const double lift =
            2.0 * kPi * eff * span_l + kPi * k * k * p.h0 * cp * span_m;
        const double thrust =
            4.0 * std::pow(k * p.h0, 2) * sp * (F * cp - G * sp) * span_l -
            alpha * lift;

        const auto got = ornith::wing_flap_coeffs(alpha, k, phase, C, C, p);
        CAPTURE(alpha);
        CAPTURE(k);
        CAPTURE(phase);
        CHECK(got.C_L == doctest::Approx(lift).epsilon(1e-12));
        CHECK(got.C_T == doctest::Approx(thrust).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("flapping lift clamps circulation but not added mass") {
  // Drive the circulatory angle far past stall at phase 0, where the
  // added-mass term is at its positive peak: the total must exceed the
  // pure stall value by exactly the added-mass term.
  const double k = 2.0, phase = 0.0;
  const std::complex<double> C = ornith::theodorsen(k);
  const double alpha = deg_to_rad(30.0);
  const double span_l = p.AR / (p.AR + 2.0);
  const double span_m = p.AR / (p.AR + 1.0);
  const double stall_lift = 2.0 * kPi * p.stall_wing_rad() * span_l;
  const double added_mass = kPi * k * k * p.h0 * span_m;
  const auto got = ornith::wing_flap_coeffs(alpha, k, phase, C, C, p);
  CHECK(got.C_L == doctest::Approx(stall_lift + added_mass).epsilon(1e-12));
}

TEST_CASE("separate thrust circulation enters only the thrust term") {
  const double k = 0.8, phase = 1.2, alpha = deg_to_rad(2.0);
  const std::complex<double> C = ornith::theodorsen(k);
  const std::complex<double> C1{0.6, -0.1};
  const auto base = ornith::wing_flap_coeffs(alpha, k, phase, C, C, p);
  const auto mixed = ornith::wing_flap_coeffs(alpha, k, phase, C, C1, p);

  const double span_l = p.AR / (p.AR + 2.0);
  const double sp = std::sin(phase), cp = std::cos(phase);
  const double suction_base =
      4.0 * std::pow(k * p.h0, 2) * sp * (C.real() * cp - C.imag() * sp) * span_l;
  const double suction_mixed =
      4.0 * std::pow(k * p.h0, 2) * sp * (C1.real() * cp - C1.imag() * sp) * span_l;
  CHECK(mixed.C_L == base.C_L);
  CHECK(mixed.C_T - suction_mixed ==
        doctest::Approx(base.C_T - suction_base).epsilon(1e-12));
}

TEST_CASE("state-level flapping wrapper computes k from airspeed") {
  FlightState s;
  s.u = 0.9;
  s.w = 0.05;
  const Maneuver m{-2.0, 5.0};
  const double t_nd = 3.7;
  const double u_b = s.speed();
  const double f_nd = sc.to_nd_frequency(m.f_hz);
  const double k = 2.0 * kPi * f_nd / u_b;
  const double phase = 2.0 * kPi * f_nd * t_nd;
  const std::complex<double> C = ornith::theodorsen(k);
  const auto want =
      ornith::wing_flap_coeffs(ornith::angle_of_attack(s), k, phase, C, C, p);
  const auto got = ornith::wing_coeffs_flap(s, m, t_nd, p, sc);
  CHECK(got.C_L == want.C_L);
  CHECK(got.C_T == want.C_T);
}

TEST_CASE("state-level flapping wrapper rejects bad regimes") {
  FlightState s;
  s.u = 1.0;
  CHECK_THROWS_AS(ornith::wing_coeffs_flap(s, Maneuver{0.0, 0.0}, 0.0, p, sc),
                  std::invalid_argument);
  s.u = 0.0;
  s.w = 0.0;
  CHECK_THROWS_AS(ornith::wing_coeffs_flap(s, Maneuver{0.0, 5.0}, 0.0, p, sc),
                  ornith::DegenerateStateError);
  // Airspeed low enough to push the reduced frequency past model validity.
  s.u = 1e-3;
  CHECK_THROWS_AS(ornith::wing_coeffs_flap(s, Maneuver{0.0, 5.0}, 0.0, p, sc),
                  ornith::DegenerateStateError);
}

TEST_CASE("coefficient dispatch selects glide or flap by frequency") {
  FlightState s;
  s.u = 1.1;
  s.w = 0.08;
  s.q = 0.01;
  const double alpha_dot = 0.005;
  const double alpha = ornith::angle_of_attack(s);
  const double u_b = s.speed();

  const AeroCoefficients glide =
      ornith::aero_coefficients(s, Maneuver{-3.0, 0.0}, 0.0, alpha_dot, p, sc);
  CHECK(glide.C_T == 0.0);
  CHECK(glide.C_L ==
        doctest::Approx(ornith::wing_lift_glide(alpha, alpha_dot, s.q, u_b, p)));
  CHECK(glide.C_Lt == doctest::Approx(ornith::tail_lift(
                          alpha, deg_to_rad(-3.0), alpha_dot, s.q, u_b, p)));
  const auto d = ornith::drag_coeffs(glide.C_L, glide.C_Lt, p);
  CHECK(glide.C_D == d.C_D);
  CHECK(glide.C_Dt == d.C_Dt);

  const AeroCoefficients flap =
      ornith::aero_coefficients(s, Maneuver{-3.0, 5.0}, 0.25, alpha_dot, p, sc);
  const auto wing = ornith::wing_coeffs_flap(s, Maneuver{-3.0, 5.0}, 0.25, p, sc);
  CHECK(flap.C_L == wing.C_L);
  CHECK(flap.C_T == wing.C_T);
  CHECK(flap.C_Lt == glide.C_Lt);  // tail model is mode-independent
}
