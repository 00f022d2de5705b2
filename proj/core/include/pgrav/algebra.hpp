// Gauge algebra of local inner translations and rotations, the gauge
// potentials built on it, and their field strengths.
//
// Index bookkeeping: inner indices (alpha, beta, ...) are stored upper and
// lowered explicitly through eta. Spacetime indices on potentials and field
// strengths are stored in their natural lower position (a_mu^alpha,
// f_{mu nu}^alpha), so the defining component formulas transcribe without
// hidden sign flips; raising with eta happens only where a formula demands it.
#pragma once

#include <array>
#include <functional>

#include "pgrav/constants.hpp"
#include "pgrav/errors.hpp"
#include "pgrav/fourvec.hpp"

namespace pgrav {

// Ordered spacetime index pairs, same layout as the inner-index pairs.
inline constexpr auto kSpacetimePairs = AntisymTensor::kPairs;

// ---------------------------------------------------------------------------
// Transformation parameters: a local translation epsilon^alpha and a local
// rotation omega^{alpha beta}, both carrying dimensions of length.

struct PoincareParameter {
  FourVector epsilon;   // upper inner index
  AntisymTensor omega;  // upper inner indices
};

// Coordinate derivatives of a parameter, supplied by the caller (analytic
// where available).
struct PoincareParameterGradient {
  std::array<FourVector, 4> d_epsilon{};   // d_epsilon[mu] = partial_mu epsilon^alpha
  std::array<AntisymTensor, 4> d_omega{};  // d_omega[mu] = partial_mu omega^{alpha beta}
};

// Lie bracket of two parameters:
//   epsilon3^alpha = lambda^-1 (omega1^alpha_beta epsilon2^beta
//                              - omega2^alpha_beta epsilon1^beta)
//   omega3 = lambda^-1 [omega1, omega2].
// The result is again a valid parameter (the algebra closes).
PoincareParameter parameter_commutator(const PoincareParameter& p1,
                                       const PoincareParameter& p2,
                                       const Constants& consts);

// Inner vector field generated by a parameter, sampled at inner point X:
//   E^alpha(X) = epsilon^alpha + omega^alpha_beta lambda^-1 X^beta.
FourVector expand_parameter(const PoincareParameter& p, const FourVector& X,
                            const Constants& consts);

// ---------------------------------------------------------------------------
// Gauge potentials at one event.

struct PoincareGaugeField {
  // a[mu][alpha] = a_mu^alpha: lower spacetime mu, upper inner alpha.
  std::array<std::array<double, 4>, 4> a{};
  // b[mu] = b_mu^{alpha beta}: lower mu, antisymmetric upper inner pair.
  std::array<AntisymTensor, 4> b{};
};

PoincareGaugeField operator+(const PoincareGaugeField& x, const PoincareGaugeField& y);
PoincareGaugeField operator-(const PoincareGaugeField& x, const PoincareGaugeField& y);
PoincareGaugeField operator*(double s, const PoincareGaugeField& x);

// ---------------------------------------------------------------------------
// Field strengths at one event, stored per ordered spacetime pair mu < nu.

struct FieldStrengths {
  // f[p][alpha] = f_{mu nu}^alpha for pair p, upper inner alpha.
  std::array<std::array<double, 4>, 6> f{};
  // h[p] = h_{mu nu}^{alpha beta} for pair p.
  std::array<AntisymTensor, 6> h{};

  // Full components with the mu<->nu antisymmetry sign applied.
  double f_comp(int mu, int nu, int alpha) const;
  double h_comp(int mu, int nu, int alpha, int beta) const;
};

FieldStrengths operator+(const FieldStrengths& x, const FieldStrengths& y);
FieldStrengths operator-(const FieldStrengths& x, const FieldStrengths& y);
FieldStrengths operator*(double s, const FieldStrengths& x);

// ---------------------------------------------------------------------------
// A potential configuration over spacetime: an evaluator plus an optional
// analytic coordinate derivative. Without the analytic derivative, d() falls
// back to 4th-order central differences with step fd_step (choose roughly
// 1e-4 times the configuration's characteristic length).

struct GaugeFieldConfiguration {
  std::function<PoincareGaugeField(const FourVector&)> evaluate;
  // derivative(x, mu) = partial_mu of the potentials at x; may be empty.
  std::function<PoincareGaugeField(const FourVector&, int)> derivative;
  double fd_step = 1e-4;

  // partial_mu of the potentials at x, analytic if available.
  PoincareGaugeField d(const FourVector& x, int mu) const;
};

// Field strengths of a configuration at event x:
//   f_{mu nu}^alpha = partial_mu a_nu^alpha - partial_nu a_mu^alpha
//                   + lambda^-1 b_nu^alpha_beta a_mu^beta
//                   - lambda^-1 b_mu^alpha_beta a_nu^beta
//   h_{mu nu}^alpha_beta = partial_mu b_nu - partial_nu b_mu
//                        + lambda^-1 [b_nu, b_mu]^alpha_beta.
FieldStrengths field_strengths(const GaugeFieldConfiguration& cfg, const FourVector& x,
                               const Constants& consts);

// Inhomogeneous transformation of the potentials; returns the first-order
// variation delta itself, not the shifted field:
//   delta a_mu^alpha = partial_mu epsilon^alpha
//                    + lambda^-1 omega^alpha_beta a_mu^beta
//                    - lambda^-1 b_mu^alpha_beta epsilon^beta
//   delta b_mu = partial_mu omega + lambda^-1 [omega, b_mu].
PoincareGaugeField gauge_transform_fields(const PoincareGaugeField& field,
                                          const PoincareParameterGradient& d_param,
                                          const PoincareParameter& param,
                                          const Constants& consts);

// Homogeneous transformation of the strengths; returns the first-order
// variation delta itself, not the shifted strengths:
//   delta f_{mu nu}^alpha = lambda^-1 omega^alpha_beta f_{mu nu}^beta
//                         - lambda^-1 h_{mu nu}^alpha_beta epsilon^beta
//   delta h_{mu nu} = lambda^-1 [omega, h_{mu nu}].
FieldStrengths gauge_transform_strengths(const FieldStrengths& F,
                                         const PoincareParameter& param,
                                         const Constants& consts);

// Strength of the full inner-space field at inner point X:
//   F_{mu nu}^alpha(X) = f_{mu nu}^alpha + h_{mu nu}^alpha_beta lambda^-1 X^beta,
// returned per ordered spacetime pair with upper alpha.
std::array<std::array<double, 4>, 6> reconstruct_full_strength(const FieldStrengths& F,
                                                               const FourVector& X,
                                                               const Constants& consts);

}  // namespace pgrav
