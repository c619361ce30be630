#ifndef ORNITH_THEODORSEN_HPP
#define ORNITH_THEODORSEN_HPP

#include <complex>
#include <functional>

namespace ornith {

/// Theodorsen's lift deficiency function C(k) = F(k) + i G(k), evaluated
/// from Hankel functions of the second kind:
///
///   C(k) = H1(k) / (H1(k) + i H0(k)),   Hn(k) = Jn(k) - i Yn(k)
///
/// C(0) = 1 by definition. F decreases from 1 toward 1/2 and G <= 0.
/// Throws std::domain_error for k < 0.
std::complex<double> theodorsen(double k);

/// Circulatory gain applied to the thrust terms. The default model reuses
/// Theodorsen's function; a different closure can be plugged in to calibrate
/// thrust independently of lift.
using CirculationFn = std::function<std::complex<double>(double)>;

}  // namespace ornith

#endif
