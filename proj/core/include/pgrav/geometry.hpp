// Gauge-invariant line element and weak-field clock-rate observable.
#pragma once

#include "pgrav/algebra.hpp"
#include "pgrav/constants.hpp"

namespace pgrav {

// ds2 = flat_part + field_part holds exactly by construction.
struct LineElementSample {
  double ds2 = 0.0;
  double flat_part = 0.0;
  double field_part = 0.0;
};

// Line element along a path segment with tangent ydot over parameter step
// dsigma, for a test body of mass m carrying charges (Q, N):
//   flat_part  = -ydot.ydot dsigma^2
//   field_part = -2 g (a_mu^alpha Q_alpha / m
//                      - (1/2 lambda) b_mu^{ab} N_{ab} / m) ydot^mu dsigma^2.
// The overall sign of the coupling term is fixed by the static weak-field
// limit: a point mass must give ds^2 = (1 - 2 gamma m_A / r) dt^2, i.e. clocks
// deeper in the potential tick slower. `fields` holds the physical potentials;
// the formula's g is applied here. Output scales out the test body: (m, Q, N)
// -> (k m, k Q, k N) leaves the sample unchanged.
LineElementSample line_element(const FourVector& ydot, const PoincareGaugeField& fields,
                               const FourVector& q_charge, const AntisymTensor& n_charge,
                               double mass, double dsigma, const Constants& consts);

// Static weak-field clock rate dtau/dt = sqrt(1 - 2 gamma m_A / r).
// First-order validity guard: refuses r <= guard_factor * gamma * m_A
// (default 10); the guard never drops below the hard floor of 2 where the
// root leaves its domain. DomainError on violation.
double clock_rate(double mass_a, double r, const Constants& consts,
                  double guard_factor = 10.0);

}  // namespace pgrav
