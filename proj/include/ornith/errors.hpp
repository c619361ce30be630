#ifndef ORNITH_ERRORS_HPP
#define ORNITH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ornith {

/// Bad or inconsistent configuration input (files, parameter ranges).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// State with zero airspeed: angle of attack is undefined.
struct DegenerateStateError : std::domain_error {
  explicit DegenerateStateError(const std::string& what)
      : std::domain_error(what) {}
};

/// Integration produced a non-finite state.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Search finished without any node inside the goal tolerance.
/// best_distance is the smallest goal distance reached, for diagnostics.
struct NoSolutionError : std::runtime_error {
  double best_distance;
  NoSolutionError(const std::string& what, double best)
      : std::runtime_error(what), best_distance(best) {}
};

}  // namespace ornith

#endif
