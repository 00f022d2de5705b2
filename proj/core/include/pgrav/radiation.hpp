// Energy-momentum of the field, Poynting flux, angular power distribution,
// the relativistic Larmor-type formula, and circular-orbit radiated power.
//
// Sign convention: the interaction bracket lambda^2 P.P + 1/4 M..M is
// negative for a massive particle with M = 0, so the signed power formulas
// come out negative; callers report the magnitude as the physical power and
// keep the sign as metadata.
#pragma once

#include <vector>

#include "pgrav/algebra.hpp"
#include "pgrav/constants.hpp"
#include "pgrav/source.hpp"

namespace pgrav {

// Mixed-index energy-momentum tensor theta^mu_nu.
struct StressTensor {
  std::array<std::array<double, 4>, 4> theta{};
};

// Canonical combination
//   theta^mu_nu = -(1/4 lambda^2) { 1/4 eta^mu_nu f.f - f^{mu rho}_alpha f_{rho nu}^alpha
//                                 + (same for h) }.
// Its i0 row reproduces the Poynting vector below; it is not divergence-free
// (see stress_tensor_conserved).
StressTensor stress_tensor(const FieldStrengths& F, const Constants& consts);

// Variant with the quadratic contraction transposed (f_{nu rho} in place of
// f_{rho nu}). This is the divergence-free combination; it equals the
// negative of stress_tensor minus (1/8 lambda^2) eta^mu_nu (f.f + h.h), so
// its i0 row is the negative of the Poynting vector.
StressTensor stress_tensor_conserved(const FieldStrengths& F, const Constants& consts);

// Energy flux density theta^i_0 = (1/4 lambda^2)(d^alpha ^ h_alpha
// + d^{ab} ^ h_{ab})^i, inner indices contracted with eta.
Vec3 poynting(const EMDecomposition& em, const Constants& consts);

// Kinematics and charges of the emitter at one retarded instant.
struct EmissionState {
  FourVector p;      // P^alpha
  AntisymTensor m;   // M^{ab}
  Vec3 v_hat;        // coordinate velocity
  Vec3 dvdt;         // coordinate acceleration
};

EmissionState emission_state(const SourceParticle& s, double tau);

// Signed angular power distribution at emission time:
//   dP/dOmega = (1/16 pi)(lambda^2 P.P + 1/4 M..M)
//               |n ^ ((n - v) ^ dv/dt)|^2 / (1 - n.v)^5.
double angular_power(const EmissionState& e, const Vec3& n, const Constants& consts);

// Signed total power:
//   P = (1/6)(lambda^2 P.P + 1/4 M..M)(|dv/dt|^2 - |v ^ dv/dt|^2)/(1 - v^2)^3.
double total_power(const EmissionState& e, const Constants& consts);

struct SignedPower {
  double value = 0.0;      // signed, negative for ordinary masses
  double magnitude = 0.0;  // reported physical power
};

// Leading mass-order circular-orbit power
//   value = -(1/6) newton_gamma m^2 v^4 / ((1 - v^2)^2 rho^2),
// the circular-motion specialization of total_power with rest-frame charges
// (no extra Lorentz factor beyond the (1 - v^2)^-2). Requires 0 <= v_hat < 1
// and rho > 0 (DomainError otherwise).
SignedPower circular_orbit_power(double mass, double v_hat, double rho,
                                 const Constants& consts);

// Solid-angle quadrature nodes; weights sum to 4 pi. n_theta / n_phi record
// the product scheme so a coarser companion grid can be built for error
// estimation; hand-built node lists leave them zero.
struct AngularGrid {
  struct Node {
    Vec3 n;
    double weight = 0.0;
  };
  std::vector<Node> nodes;
  int n_theta = 0;
  int n_phi = 0;

  // Gauss-Legendre in cos(theta) times a uniform periodic rule in phi.
  static AngularGrid product_gauss(int n_theta, int n_phi);
};

// Deterministic pairwise-summed quadrature of angular_power over the grid.
double integrate_angular_power(const EmissionState& e, const AngularGrid& grid,
                               const Constants& consts);

struct FluxResult {
  double power = 0.0;           // signed sphere flux at observation time t
  double error_estimate = 0.0;  // |full - half-resolution| quadrature gap
};

// Sphere integral of the Poynting flux at coordinate time t and the given
// radius, with no retarded-time reweighting: for a steadily rotating source
// energy conservation makes this equal the emitted power at every radius.
// Deterministic pairwise reduction.
FluxResult flux_integral(const SourceParticle& s, double radius, const AngularGrid& grid,
                         double t, const Constants& consts,
                         const RetardedConfig& cfg = {});

}  // namespace pgrav
