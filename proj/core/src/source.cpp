#include "pgrav/source.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pgrav {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;

double light_cone_gap(const FourVector& x, const FourVector& y) {
  const FourVector dx = x - y;
  return minkowski_dot(dx, dx);
}

}  // namespace

ParticleCharges SourceParticle::charges_at(double tau) const {
  if (identification_mode == IdentificationMode::frozen) return {p_grav, m_grav};
  const WorldlineSample s = worldline.state(tau);
  return {mass * s.u, mass * wedge(s.y - origin, s.u)};
}

RetardedPoint retarded_time(const FourVector& x, const Worldline& w,
                            const RetardedConfig& cfg) {
  const auto& samples = w.samples();
  if (samples.size() < 2)
    throw NotCoveredError("retarded_time: worldline has no history");
  if (!(x[0] > samples.front().y[0]))
    throw NotCoveredError("retarded_time: field point predates the stored history");

  // Upper end of the search range: the proper time where y0 reaches x0, or
  // the end of the history. The squared separation must be non-negative there.
  double hi;
  if (samples.back().y[0] < x[0]) {
    hi = samples.back().tau;
    if (light_cone_gap(x, samples.back().y) < 0.0)
      throw NotCoveredError("retarded_time: stored history ends inside the past light cone");
  } else {
    auto it = std::partition_point(samples.begin(), samples.end(),
                                   [&](const WorldlineSample& s) { return s.y[0] < x[0]; });
    // Bisect y0(tau) = x0 inside the crossing segment (y0 strictly increases).
    double lo_t = (it - 1)->tau, hi_t = it->tau;
    for (int i = 0; i < 200 && hi_t - lo_t > 1e-15 * (std::abs(hi_t) + 1.0); ++i) {
      const double mid = 0.5 * (lo_t + hi_t);
      (w.position(mid)[0] < x[0] ? lo_t : hi_t) = mid;
    }
    hi = lo_t;
    if (light_cone_gap(x, w.position(hi)) <= 0.0)
      throw SingularError("retarded_time: field point lies on the worldline");
  }

  // Walk backward over samples strictly below hi. The gap is non-negative at
  // hi; positive-gap samples tighten hi, and the first non-positive gap
  // closes the bracket around the unique retarded root.
  double lo = hi;
  bool bracketed = false;
  for (auto idx = static_cast<std::ptrdiff_t>(samples.size()) - 1; idx >= 0; --idx) {
    const auto& s = samples[static_cast<std::size_t>(idx)];
    if (!(s.tau < hi)) continue;
    if (light_cone_gap(x, s.y) <= 0.0) {
      lo = s.tau;
      bracketed = true;
      break;
    }
    hi = s.tau;
  }
  if (!bracketed)
    throw NotCoveredError("retarded_time: stored history starts after the past light cone");

  // Bisection on the interpolated gap.
  double a = lo, b = hi;
  for (int i = 0; i < 200 && b - a > 1e-16 * (std::abs(a) + std::abs(b) + 1.0); ++i) {
    const double mid = 0.5 * (a + b);
    (light_cone_gap(x, w.position(mid)) <= 0.0 ? a : b) = mid;
  }
  double tau = 0.5 * (a + b);

  // Newton polish: d/dtau (x - y)^2 = -2 u.(x - y).
  for (int i = 0; i < 2; ++i) {
    const FourVector dx = x - w.position(tau);
    const double g = minkowski_dot(dx, dx);
    const double dg = -2.0 * minkowski_dot(w.velocity(tau), dx);
    if (dg == 0.0) break;
    const double next = tau - g / dg;
    if (next < lo || next > hi) break;
    tau = next;
  }

  RetardedPoint rp;
  rp.tau_plus = tau;
  rp.y_plus = w.position(tau);
  rp.u_plus = w.velocity(tau);
  rp.du_plus = w.acceleration(tau);
  const double dt = x[0] - rp.y_plus[0];
  if (!(dt > 0.0))
    throw SingularError("retarded_time: retarded point is not in the past");
  // The singular-separation check comes first: inside r_min the quadratic
  // residual target dt^2 collapses and the polish cannot meet it anyway.
  rp.r_vec = x.spatial() - rp.y_plus.spatial();
  rp.r = norm(rp.r_vec);
  if (rp.r < cfg.r_min())
    throw SingularError("retarded_time: field point within r_min of the worldline");
  const double residual = std::abs(light_cone_gap(x, rp.y_plus));
  if (residual > cfg.tol_lightcone * dt * dt)
    throw ValidationError("retarded_time: light-cone residual " + std::to_string(residual) +
                          " exceeds tolerance");
  rp.v_hat = rp.u_plus.spatial() / rp.u_plus[0];
  rp.kappa = rp.r - dot(rp.r_vec, rp.v_hat);
  if (!(rp.kappa > 0.0))
    throw SingularError("retarded_time: vanishing retarded denominator");
  return rp;
}

PoincareGaugeField lienard_wiechert(const FourVector& x, const SourceParticle& s,
                                    const Constants& consts, const RetardedConfig& cfg) {
  const RetardedPoint rp = retarded_time(x, s.worldline, cfg);
  const ParticleCharges ch = s.charges_at(rp.tau_plus);
  const double lam = consts.lambda_planck;
  const FourVector u_low = lower(rp.u_plus);
  const double denom = rp.u_plus[0] * rp.kappa;  // gamma kappa

  PoincareGaugeField field;
  for (int mu = 0; mu < 4; ++mu) {
    const double coef_a = lam * lam / kFourPi * u_low[mu] / denom;
    const double coef_b = -lam / (2.0 * kFourPi) * u_low[mu] / denom;
    for (int al = 0; al < 4; ++al) field.a[mu][al] = coef_a * ch.p[al];
    field.b[mu] = coef_b * ch.m;
  }
  return field;
}

GaugeFieldConfiguration lienard_wiechert_config(const SourceParticle& s,
                                                const Constants& consts,
                                                const RetardedConfig& cfg) {
  GaugeFieldConfiguration out;
  out.evaluate = [s, consts, cfg](const FourVector& x) {
    return lienard_wiechert(x, s, consts, cfg);
  };
  out.fd_step = 1e-4 * cfg.length_scale;
  return out;
}

EMDecomposition field_strengths_at(const FourVector& x, const SourceParticle& s,
                                   const Constants& consts, const RetardedConfig& cfg) {
  const RetardedPoint rp = retarded_time(x, s.worldline, cfg);
  const ParticleCharges ch = s.charges_at(rp.tau_plus);
  const double lam = consts.lambda_planck;
  const double g = consts.g_coupling;

  // Coordinate acceleration dv_hat/dt from the proper-time kinematics.
  const double u0 = rp.u_plus[0];
  const Vec3 dvdt = (1.0 / (u0 * u0)) * rp.du_plus.spatial() -
                    (rp.du_plus[0] / (u0 * u0 * u0)) * rp.u_plus.spatial();

  const Vec3 rv = rp.r_vec - rp.r * rp.v_hat;
  const double one_minus_v2 = 1.0 - dot(rp.v_hat, rp.v_hat);
  const Vec3 kernel = one_minus_v2 * rv + cross(rp.r_vec, cross(rv, dvdt));
  const double inv_kappa3 = 1.0 / (rp.kappa * rp.kappa * rp.kappa);
  const Vec3 n = rp.r_vec / rp.r;

  const double coef_d = -g * lam * lam / kFourPi * inv_kappa3;
  const double coef_d_rot = g * lam / (2.0 * kFourPi) * inv_kappa3;

  EMDecomposition em;
  for (int al = 0; al < 4; ++al) {
    em.d[al] = (coef_d * ch.p[al]) * kernel;
    em.h[al] = cross(n, em.d[al]);
  }
  for (int q = 0; q < 6; ++q) {
    em.d_rot[q] = (coef_d_rot * ch.m.c[q]) * kernel;
    em.h_rot[q] = cross(n, em.d_rot[q]);
  }
  return em;
}

FieldStrengths to_field_strengths(const EMDecomposition& em) {
  FieldStrengths F;
  for (int al = 0; al < 4; ++al) {
    // d^{i alpha} = f^{i0 alpha} = f_{0i}^alpha.
    F.f[0][al] = em.d[al].x;
    F.f[1][al] = em.d[al].y;
    F.f[2][al] = em.d[al].z;
    // h^{i alpha} = -1/2 eps^{ijk} f_{jk}^alpha inverts to f_{jk} = -eps_{jkl} h^l.
    F.f[3][al] = -em.h[al].z;
    F.f[4][al] = em.h[al].y;
    F.f[5][al] = -em.h[al].x;
  }
  for (int q = 0; q < 6; ++q) {
    F.h[0].c[q] = em.d_rot[q].x;
    F.h[1].c[q] = em.d_rot[q].y;
    F.h[2].c[q] = em.d_rot[q].z;
    F.h[3].c[q] = -em.h_rot[q].z;
    F.h[4].c[q] = em.h_rot[q].y;
    F.h[5].c[q] = -em.h_rot[q].x;
  }
  return F;
}

EMDecomposition em_decompose(const FieldStrengths& F) {
  EMDecomposition em;
  for (int al = 0; al < 4; ++al) {
    em.d[al] = {F.f[0][al], F.f[1][al], F.f[2][al]};
    em.h[al] = {-F.f[5][al], F.f[4][al], -F.f[3][al]};
  }
  for (int q = 0; q < 6; ++q) {
    em.d_rot[q] = {F.h[0].c[q], F.h[1].c[q], F.h[2].c[q]};
    em.h_rot[q] = {-F.h[5].c[q], F.h[4].c[q], -F.h[3].c[q]};
  }
  return em;
}

}  // namespace pgrav
