#ifndef ORNITH_REFERENCE_CURVE_HPP
#define ORNITH_REFERENCE_CURVE_HPP

namespace ornith {

/// Raised-cosine guide curve between two plane points, in meters with z
/// positive down. The curve starts flat at (x0, z0), steepens in the middle
/// and arrives flat at (xf, zf). Requires xf > x0; zf may be above or below
/// z0 or equal to it.
struct ReferenceCurve {
  double x0 = 0.0;
  double z0 = 0.0;
  double xf = 0.0;
  double zf = 0.0;

  double x_span() const { return xf - x0; }
  double z_drop() const { return zf - z0; }

  /// z at horizontal position x in [x0, xf]:
  ///   z(x) = z0 + (z_drop / 2) * (1 + cos(pi + pi (x - x0) / x_span))
  /// Throws std::domain_error outside the span.
  double eval(double x) const;
};

ReferenceCurve make_reference_curve(double x0, double z0, double xf, double zf);

/// Tube of radius k_d (meters) around a reference curve.
struct Corridor {
  ReferenceCurve curve;
  double k_d = 0.0;  // admissible distance from the curve; may be infinite

  bool contains(double x, double z) const;
};

/// Minimum Euclidean distance from (x, z) to the curve, in meters.
/// Evaluated by dense sampling of the curve parameter followed by
/// golden-section refinement around the best sample; the result is within
/// 1e-3 m of the true minimum. Points beyond either end measure distance to
/// the nearest endpoint.
double corridor_distance(const ReferenceCurve& c, double x, double z,
                         int samples = 1000);

}  // namespace ornith

#endif
