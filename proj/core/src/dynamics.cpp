#include "pgrav/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace pgrav {

ParticleCharges ParticleState::charges() const {
  if (identification_mode == IdentificationMode::frozen) return {p_grav, m_grav};
  return {mass * u, mass * wedge(y - origin, u)};
}

ParticleState identify(const ParticleState& state) {
  ParticleState out = state;
  const ParticleCharges ch = state.charges();
  out.p_grav = ch.p;
  out.m_grav = ch.m;
  out.identification_mode = IdentificationMode::frozen;
  return out;
}

double coupling_bracket(const FourVector& P, const AntisymTensor& M,
                        const FourVector& Q, const AntisymTensor& N,
                        const Constants& consts) {
  const double lam2 = consts.lambda_planck * consts.lambda_planck;
  return lam2 * minkowski_dot(P, Q) + 0.25 * double_contract(M, N);
}

FourVector four_force(const ParticleState& state, const FieldStrengths& F,
                      const Constants& consts) {
  const ParticleCharges ch = state.charges();
  const FourVector q_low = lower(ch.p);
  const double half_inv_lambda = 0.5 / consts.lambda_planck;

  FourVector force_low{0.0, 0.0, 0.0, 0.0, IndexPosition::lower};
  for (int mu = 0; mu < 4; ++mu) {
    double v = 0.0;
    for (int nu = 0; nu < 4; ++nu) {
      if (nu == mu) continue;
      double bracket = 0.0;
      for (int al = 0; al < 4; ++al) bracket += F.f_comp(mu, nu, al) * q_low[al];
      AntisymTensor h_munu;
      for (std::size_t q = 0; q < 6; ++q) {
        const auto [a_idx, b_idx] = AntisymTensor::kPairs[q];
        h_munu.c[q] = F.h_comp(mu, nu, a_idx, b_idx);
      }
      bracket -= half_inv_lambda * double_contract(h_munu, ch.m);
      v += bracket * state.u[nu];
    }
    force_low[mu] = v;
  }
  return consts.g_coupling * raise(force_low);
}

FourVector proper_acceleration(const ParticleState& state, const FieldStrengths& F,
                               const Constants& consts) {
  return (1.0 / state.mass) * four_force(state, F, consts);
}

Vec3 newton_accel(double mass_a, const Vec3& z, const Constants& consts) {
  const double r = norm(z);
  if (!(r > 0.0)) throw DomainError("newton_accel: zero separation");
  return (-consts.newton_gamma * mass_a / (r * r * r)) * z;
}

namespace {

struct Derivative {
  FourVector dy;  // = u
  FourVector du;  // = force / m
};

Derivative evaluate(const ParticleState& base, double tau, const FourVector& y,
                    const FourVector& u, const ExternalField& fields,
                    const Constants& consts) {
  ParticleState probe = base;
  probe.tau = tau;
  probe.y = y;
  probe.u = u;
  return {u, proper_acceleration(probe, fields(y), consts)};
}

ParticleState rk4_step(const ParticleState& s, const ExternalField& fields, double h,
                       const Constants& consts) {
  const Derivative k1 = evaluate(s, s.tau, s.y, s.u, fields, consts);
  const Derivative k2 = evaluate(s, s.tau + 0.5 * h, s.y + 0.5 * h * k1.dy,
                                 s.u + 0.5 * h * k1.du, fields, consts);
  const Derivative k3 = evaluate(s, s.tau + 0.5 * h, s.y + 0.5 * h * k2.dy,
                                 s.u + 0.5 * h * k2.du, fields, consts);
  const Derivative k4 =
      evaluate(s, s.tau + h, s.y + h * k3.dy, s.u + h * k3.du, fields, consts);

  ParticleState out = s;
  out.tau = s.tau + h;
  out.y = s.y + (h / 6.0) * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
  out.u = s.u + (h / 6.0) * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
  return out;
}

// Fehlberg 4(5) embedded pair; the 5th-order solution is propagated and the
// difference of the two orders drives step control.
ParticleState rkf45_try(const ParticleState& s, const ExternalField& fields, double h,
                        const Constants& consts, double* err_norm,
                        const IntegratorConfig& cfg) {
  static constexpr double a2 = 0.25;
  static constexpr double a31 = 3.0 / 32.0, a32 = 9.0 / 32.0;
  static constexpr double a41 = 1932.0 / 2197.0, a42 = -7200.0 / 2197.0,
                          a43 = 7296.0 / 2197.0;
  static constexpr double a51 = 439.0 / 216.0, a52 = -8.0, a53 = 3680.0 / 513.0,
                          a54 = -845.0 / 4104.0;
  static constexpr double a61 = -8.0 / 27.0, a62 = 2.0, a63 = -3544.0 / 2565.0,
                          a64 = 1859.0 / 4104.0, a65 = -11.0 / 40.0;
  static constexpr double c2 = 0.25, c3 = 0.375, c4 = 12.0 / 13.0, c5 = 1.0, c6 = 0.5;
  static constexpr double b4[6] = {25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0,
                                   -0.2, 0.0};
  static constexpr double b5[6] = {16.0 / 135.0,      0.0,        6656.0 / 12825.0,
                                   28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0};

  const Derivative k1 = evaluate(s, s.tau, s.y, s.u, fields, consts);
  auto at = [&](double c, const FourVector& y, const FourVector& u) {
    return evaluate(s, s.tau + c * h, y, u, fields, consts);
  };
  const Derivative k2 = at(c2, s.y + (h * a2) * k1.dy, s.u + (h * a2) * k1.du);
  const Derivative k3 = at(c3, s.y + h * (a31 * k1.dy + a32 * k2.dy),
                           s.u + h * (a31 * k1.du + a32 * k2.du));
  const Derivative k4 = at(c4, s.y + h * (a41 * k1.dy + a42 * k2.dy + a43 * k3.dy),
                           s.u + h * (a41 * k1.du + a42 * k2.du + a43 * k3.du));
  const Derivative k5 =
      at(c5, s.y + h * (a51 * k1.dy + a52 * k2.dy + a53 * k3.dy + a54 * k4.dy),
         s.u + h * (a51 * k1.du + a52 * k2.du + a53 * k3.du + a54 * k4.du));
  const Derivative k6 =
      at(c6, s.y + h * (a61 * k1.dy + a62 * k2.dy + a63 * k3.dy + a64 * k4.dy + a65 * k5.dy),
         s.u + h * (a61 * k1.du + a62 * k2.du + a63 * k3.du + a64 * k4.du + a65 * k5.du));

  const Derivative* k[6] = {&k1, &k2, &k3, &k4, &k5, &k6};
  FourVector y4 = s.y, u4 = s.u, y5 = s.y, u5 = s.u;
  for (int i = 0; i < 6; ++i) {
    y4 = y4 + (h * b4[i]) * k[i]->dy;
    u4 = u4 + (h * b4[i]) * k[i]->du;
    y5 = y5 + (h * b5[i]) * k[i]->dy;
    u5 = u5 + (h * b5[i]) * k[i]->du;
  }

  double norm_ratio = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double ey = std::abs(y5[i] - y4[i]);
    const double eu = std::abs(u5[i] - u4[i]);
    norm_ratio = std::max(norm_ratio, ey / (cfg.abs_tol + cfg.rel_tol * std::abs(y5[i])));
    norm_ratio = std::max(norm_ratio, eu / (cfg.abs_tol + cfg.rel_tol * std::abs(u5[i])));
  }
  *err_norm = norm_ratio;

  ParticleState out = s;
  out.tau = s.tau + h;
  out.y = y5;
  out.u = u5;
  return out;
}

}  // namespace

ParticleState step(const ParticleState& state, const ExternalField& fields,
                   const IntegratorConfig& cfg, const Constants& consts) {
  if (!(cfg.dtau > 0.0)) throw ValidationError("step: dtau must be positive");

  ParticleState out = state;
  if (cfg.method == IntegratorConfig::Method::rk4) {
    out = rk4_step(state, fields, cfg.dtau, consts);
  } else {
    const double tau_end = state.tau + cfg.dtau;
    double h = cfg.dtau;
    int rejects = 0;
    while (out.tau < tau_end - 1e-15 * (std::abs(tau_end) + 1.0)) {
      h = std::min(h, tau_end - out.tau);
      double err = 0.0;
      const ParticleState trial = rkf45_try(out, fields, h, consts, &err, cfg);
      if (err <= 1.0) {
        out = trial;
        if (err < 1.0 / 32.0) h *= 2.0;
      } else {
        h *= 0.5;
        if (++rejects > 60)
          throw StepRejected("step: adaptive integrator cannot meet tolerances");
      }
    }
    out.tau = tau_end;
  }

  if (cfg.renormalize_u) {
    const double nn = minkowski_dot(out.u, out.u);
    if (!(nn < 0.0)) throw ValidationError("step: four-velocity left the timelike cone");
    out.u = (1.0 / std::sqrt(-nn)) * out.u;
  }
  const double drift = std::abs(minkowski_dot(out.u, out.u) + 1.0);
  if (drift > cfg.tol_u)
    throw ValidationError("step: |u.u + 1| = " + std::to_string(drift) +
                          " exceeds tol_u after the step");
  return out;
}

}  // namespace pgrav
