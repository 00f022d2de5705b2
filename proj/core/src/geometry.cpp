#include "pgrav/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "pgrav/errors.hpp"

namespace pgrav {

LineElementSample line_element(const FourVector& ydot, const PoincareGaugeField& fields,
                               const FourVector& q_charge, const AntisymTensor& n_charge,
                               double mass, double dsigma, const Constants& consts) {
  if (!(mass > 0.0)) {
    throw DomainError("line_element: test-body mass must be positive");
  }
  if (!(dsigma > 0.0)) {
    throw DomainError("line_element: parameter step dsigma must be positive");
  }

  const FourVector ydot_up =
      ydot.pos == IndexPosition::upper ? ydot : raise(ydot);
  const FourVector q_low =
      q_charge.pos == IndexPosition::lower ? q_charge : lower(q_charge);

  const double dsigma2 = dsigma * dsigma;
  LineElementSample out;
  out.flat_part = -minkowski_dot(ydot, ydot) * dsigma2;

  double coupling = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    double inner = 0.0;
    for (int al = 0; al < 4; ++al) {
      inner += fields.a[mu][al] * q_low[al];
    }
    inner -= 0.5 / consts.lambda_planck * double_contract(fields.b[mu], n_charge);
    coupling += inner * ydot_up[mu];
  }
  out.field_part = -2.0 * consts.g_coupling * (coupling / mass) * dsigma2;
  out.ds2 = out.flat_part + out.field_part;
  return out;
}

double clock_rate(double mass_a, double r, const Constants& consts,
                  double guard_factor) {
  if (!(mass_a >= 0.0)) {
    throw DomainError("clock_rate: source mass must be non-negative");
  }
  if (!(r > 0.0)) {
    throw DomainError("clock_rate: radius must be positive");
  }
  const double limit = std::max(guard_factor, 2.0) * consts.newton_gamma * mass_a;
  if (r <= limit) {
    throw DomainError("clock_rate: radius inside the weak-field validity guard");
  }
  return std::sqrt(1.0 - 2.0 * consts.newton_gamma * mass_a / r);
}

}  // namespace pgrav
