// Relativistic point-particle motion in external field strengths, the
// charge identification rule, and the Newtonian oracle.
#pragma once

#include <functional>

#include "pgrav/algebra.hpp"
#include "pgrav/constants.hpp"
#include "pgrav/source.hpp"

namespace pgrav {

struct ParticleState {
  double tau = 0.0;
  FourVector y;
  FourVector u{1.0, 0.0, 0.0, 0.0};
  double mass = 1.0;
  IdentificationMode identification_mode = IdentificationMode::dynamic;
  FourVector p_grav;     // used verbatim in frozen mode
  AntisymTensor m_grav;  // used verbatim in frozen mode
  FourVector origin;     // reference event for the dynamic rotation charge

  // Charges per the identification mode (dynamic: P = m u, M = m (y-origin)^u).
  ParticleCharges charges() const;
};

// Copies the current kinematics into the stored charges (and switches the
// state to frozen bookkeeping of exactly these values).
ParticleState identify(const ParticleState& state);

// Interaction bracket lambda^2 P.Q + 1/4 M..N with full eta contractions.
// For two slow masses this is approximately -gamma m_A m_B (attractive).
double coupling_bracket(const FourVector& P, const AntisymTensor& M,
                        const FourVector& Q, const AntisymTensor& N,
                        const Constants& consts);

// Four-force on the particle from physical external strengths:
//   m du_mu/dtau = g (f_{mu nu}^alpha Q_alpha
//                     - (1/2 lambda) h_{mu nu}^{ab} N_{ab}) u^nu,
// returned with the index raised. Orthogonal to u by antisymmetry in mu nu.
FourVector four_force(const ParticleState& state, const FieldStrengths& F,
                      const Constants& consts);

// du/dtau = four_force / m.
FourVector proper_acceleration(const ParticleState& state, const FieldStrengths& F,
                               const Constants& consts);

// Newtonian oracle: -gamma m_A z / |z|^3. Throws DomainError at z = 0.
Vec3 newton_accel(double mass_a, const Vec3& z, const Constants& consts);

// Physical external strengths at an event (sum over sources, excluding the
// particle's own field).
using ExternalField = std::function<FieldStrengths(const FourVector&)>;

struct IntegratorConfig {
  enum class Method { rk4, rk45 };
  Method method = Method::rk4;
  double dtau = 1e-3;
  // Adaptive mode error control per component: |err| <= abs_tol + rel_tol |y|.
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  bool renormalize_u = false;
  // Post-step bound on |u.u + 1|; exceeding it raises ValidationError.
  double tol_u = 1e-6;
};

// Advances the state by exactly cfg.dtau in proper time. rk4 takes one
// classical step; rk45 sub-steps adaptively with an embedded 4(5) pair,
// halving on rejection (StepRejected after persistent failure).
ParticleState step(const ParticleState& state, const ExternalField& fields,
                   const IntegratorConfig& cfg, const Constants& consts);

}  // namespace pgrav
