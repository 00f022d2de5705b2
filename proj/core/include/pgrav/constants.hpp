// Coupling constants and the geometrized unit convention.
//
// All internal computation uses geometrized units (G = c = 1): lengths,
// times, and masses are meters; velocities are dimensionless; power is
// dimensionless. In this system the fundamental length lambda_planck and the
// gravitational constant newton_gamma = lambda_planck^2 are both 1, and the
// dimensionless gauge coupling satisfies g^2 = 4*pi, which is what makes the
// static two-body limit come out as Newton's law with strength newton_gamma.
#pragma once

#include <cmath>

namespace pgrav {

struct Constants {
  double lambda_planck = 1.0;               // fundamental length Lambda_P
  double g_coupling = 2.0 * std::sqrt(std::acos(-1.0));  // g, g^2 = 4*pi
  double newton_gamma = 1.0;                // Gamma = Lambda_P^2

  // True when the couplings realize the Newton-limit normalization that all
  // closed-form expectations in this library assume.
  bool newton_limit_mode(double tol = 1e-12) const {
    const double pi = std::acos(-1.0);
    return std::abs(g_coupling * g_coupling - 4.0 * pi) <= 4.0 * pi * tol &&
           std::abs(newton_gamma - lambda_planck * lambda_planck) <=
               tol * std::max(1.0, newton_gamma);
  }
};

// SI values used only at the unit-conversion boundary.
namespace si {
inline constexpr double kG = 6.67430e-11;      // m^3 kg^-1 s^-2 (CODATA 2018)
inline constexpr double kC = 299792458.0;      // m/s (exact)
}  // namespace si

}  // namespace pgrav
