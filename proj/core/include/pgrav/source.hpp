// Retarded potentials and field strengths of point sources: the retarded-time
// solver, the Lienard-Wiechert-type potentials, and their electric/magnetic
// style decomposition.
//
// Sign conventions follow the explicit static forms of the potentials (which
// anchor the verified Newton limit): with kappa = r - r_vec.v_hat,
//   a_mu^alpha   = +(lambda^2/4pi) P^alpha  u_mu(tau+) / (gamma kappa)
//   b_mu^{ab}    = -(lambda/8pi)   M^{ab}   u_mu(tau+) / (gamma kappa),
// so a_0^alpha = -(lambda^2/4pi) P^alpha / kappa and b_0 = +(lambda/8pi) M / kappa.
// These are the leading-order coefficient potentials; physical potentials are
// g times these, and field_strengths_at returns physical strengths (one
// explicit factor of g included).
#pragma once

#include "pgrav/algebra.hpp"
#include "pgrav/constants.hpp"
#include "pgrav/fourvec.hpp"
#include "pgrav/worldline.hpp"

namespace pgrav {

enum class IdentificationMode { dynamic, frozen };

// Translation charge P^alpha and rotation charge M^{alpha beta} of a particle.
struct ParticleCharges {
  FourVector p;
  AntisymTensor m;
};

struct SourceParticle {
  double mass = 1.0;
  Worldline worldline;
  IdentificationMode identification_mode = IdentificationMode::dynamic;
  // Charges used verbatim in frozen mode.
  FourVector p_grav;
  AntisymTensor m_grav;
  // Reference event subtracted from y in the dynamic rotation charge
  // m (y - origin) ^ u; the rotation charge is origin-dependent.
  FourVector origin;

  // Charges at proper time tau: dynamic mode identifies P = m u(tau),
  // M = m (y(tau) - origin) ^ u(tau); frozen mode returns the stored values.
  ParticleCharges charges_at(double tau) const;
};

// The unique past intersection of the source worldline with the field
// point's light cone, plus derived kinematics.
struct RetardedPoint {
  double tau_plus = 0.0;
  FourVector y_plus;
  FourVector u_plus;
  FourVector du_plus;
  Vec3 r_vec;           // x_spatial - y_plus_spatial
  double r = 0.0;       // |r_vec|
  Vec3 v_hat;           // coordinate velocity dy/dt at tau+
  double kappa = 0.0;   // r - r_vec . v_hat
};

struct RetardedConfig {
  // Light-cone residual bound: |(x - y+)^2| <= tol_lightcone * (x0 - y0+)^2.
  double tol_lightcone = 1e-12;
  // Separations below r_min_factor * length_scale raise SingularError.
  double length_scale = 1.0;
  double r_min_factor = 1e-6;

  double r_min() const { return r_min_factor * length_scale; }
};

// Solves (x - y(tau))^2 = 0 with x0 - y0(tau) > 0. The squared separation is
// strictly increasing along the past branch of a timelike worldline, so the
// root is unique: bracket over samples, bisect, then Newton-polish with
// d/dtau (x - y)^2 = -2 u.(x - y). Throws NotCoveredError when the stored
// history does not bracket the root and SingularError inside the r_min cutoff.
RetardedPoint retarded_time(const FourVector& x, const Worldline& w,
                            const RetardedConfig& cfg = {});

// Leading-order coefficient potentials of a point source at event x.
PoincareGaugeField lienard_wiechert(const FourVector& x, const SourceParticle& s,
                                    const Constants& consts,
                                    const RetardedConfig& cfg = {});

// Wraps a source as a potential configuration (no analytic derivative;
// derivatives fall back to finite differences with the configuration step).
GaugeFieldConfiguration lienard_wiechert_config(const SourceParticle& s,
                                                const Constants& consts,
                                                const RetardedConfig& cfg = {});

// Electric/magnetic style decomposition of the field strengths:
//   d^{i alpha} = f^{i0 alpha},  h^{i alpha} = -1/2 eps^{ijk} f_{jk}^alpha,
// and the same split of h_{mu nu}^{ab} into d_rot, h_rot per inner pair.
struct EMDecomposition {
  std::array<Vec3, 4> d{};      // translation-electric, per inner alpha
  std::array<Vec3, 4> h{};      // translation-magnetic, per inner alpha
  std::array<Vec3, 6> d_rot{};  // rotation-electric, per inner pair
  std::array<Vec3, 6> h_rot{};  // rotation-magnetic, per inner pair
};

// Exact closed-form physical strengths of a point source at event x, with the
// velocity and acceleration terms:
//   d^alpha   = -(g/4pi) lambda^2 P^alpha K / kappa^3
//   d^{ab}    = +(g/8pi) lambda   M^{ab}  K / kappa^3
//   K = (r_vec - r v_hat)(1 - v_hat^2)
//     + r_vec x ((r_vec - r v_hat) x dv_hat/dt),
// with the magnetic parts h = (r_vec/r) x d.
EMDecomposition field_strengths_at(const FourVector& x, const SourceParticle& s,
                                   const Constants& consts,
                                   const RetardedConfig& cfg = {});

// Conversions between the pair-indexed strengths and the decomposition.
FieldStrengths to_field_strengths(const EMDecomposition& em);
EMDecomposition em_decompose(const FieldStrengths& F);

}  // namespace pgrav
