#include "ornith/theodorsen.hpp"

#include <cmath>
#include <stdexcept>

namespace ornith {

std::complex<double> theodorsen(double k) {
  if (!(k >= 0.0)) throw std::domain_error("theodorsen: k must be >= 0");
  if (k == 0.0) return {1.0, 0.0};
  const double j0 = std::cyl_bessel_j(0.0, k);
  const double j1 = std::cyl_bessel_j(1.0, k);
  const double y0 = std::cyl_neumann(0.0, k);
  const double y1 = std::cyl_neumann(1.0, k);
  const std::complex<double> h0(j0, -y0);  // Hankel of the second kind
  const std::complex<double> h1(j1, -y1);
  return h1 / (h1 + std::complex<double>(0.0, 1.0) * h0);
}

}  // namespace ornith
