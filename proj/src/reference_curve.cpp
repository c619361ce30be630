#include "ornith/reference_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ornith {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double ReferenceCurve::eval(double x) const {
  if (!(x >= x0 && x <= xf))
    throw std::domain_error("reference curve evaluated outside [x0, xf]");
  const double span = xf - x0;
  return z0 + 0.5 * z_drop() * (1.0 + std::cos(kPi + kPi * (x - x0) / span));
}

ReferenceCurve make_reference_curve(double x0, double z0, double xf, double zf) {
  if (!(xf > x0))
    throw std::domain_error("reference curve requires xf > x0");
  if (!std::isfinite(x0) || !std::isfinite(z0) || !std::isfinite(xf) ||
      !std::isfinite(zf))
    throw std::domain_error("reference curve endpoints must be finite");
  return {x0, z0, xf, zf};
}

namespace {

double point_distance(const ReferenceCurve& c, double xq, double zq, double x) {
  const double dz = c.eval(x) - zq;
  const double dx = x - xq;
  return std::sqrt(dx * dx + dz * dz);
}

}  // namespace

double corridor_distance(const ReferenceCurve& c, double x, double z,
                         int samples) {
  if (samples < 2) samples = 2;
  const double span = c.x_span();

  // Dense scan for the best bracket.
  double best = point_distance(c, x, z, c.x0);
  int best_i = 0;
  for (int i = 1; i <= samples; ++i) {
    const double xi = c.x0 + span * i / samples;
    const double di = point_distance(c, x, z, xi);
    if (di < best) {
      best = di;
      best_i = i;
    }
  }

  // Golden-section refinement inside the neighboring samples.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = c.x0 + span * std::max(0, best_i - 1) / samples;
  double hi = c.x0 + span * std::min(samples, best_i + 1) / samples;
  double a = hi - gr * (hi - lo);
  double b = lo + gr * (hi - lo);
  double fa = point_distance(c, x, z, a);
  double fb = point_distance(c, x, z, b);
  while (hi - lo > 1e-7 * std::max(1.0, span)) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = point_distance(c, x, z, a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = point_distance(c, x, z, b);
    }
  }
  return std::min({best, fa, fb});
}

bool Corridor::contains(double x, double z) const {
  if (k_d == std::numeric_limits<double>::infinity()) return true;
  return corridor_distance(curve, x, z) <= k_d;
}

}  // namespace ornith
