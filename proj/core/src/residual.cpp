#include "pgrav/residual.hpp"

#include <algorithm>
#include <cmath>

namespace pgrav {

double FieldEquationResidual::max_abs() const {
  double m = 0.0;
  for (int nu = 0; nu < 4; ++nu) {
    for (int al = 0; al < 4; ++al) m = std::max(m, std::abs(a[nu][al]));
    for (double v : b[nu].c) m = std::max(m, std::abs(v));
  }
  return m;
}

namespace {

// 4th-order central second derivative along coordinate mu.
PoincareGaugeField second_derivative(const GaugeFieldConfiguration& cfg,
                                     const PoincareGaugeField& center,
                                     const FourVector& x, int mu, double h) {
  auto shifted = [&](double s) {
    FourVector xs = x;
    xs[mu] += s;
    return cfg.evaluate(xs);
  };
  return (1.0 / (12.0 * h * h)) *
         ((-1.0) * shifted(-2.0 * h) + 16.0 * shifted(-h) + (-30.0) * center +
          16.0 * shifted(h) + (-1.0) * shifted(2.0 * h));
}

}  // namespace

FieldEquationResidual linearized_residual(const GaugeFieldConfiguration& cfg,
                                          const FourVector& x, const SourceParticle& s,
                                          const ResidualOptions& opt) {
  // The retarded solve enforces the off-worldline precondition and yields the
  // local length scale for the FD step.
  const RetardedPoint rp = retarded_time(x, s.worldline);
  const double h = opt.step > 0.0 ? opt.step : opt.step_factor * rp.r;

  const PoincareGaugeField center = cfg.evaluate(x);
  // Wave operator: eta^{mu mu} partial_mu^2, signature (-,+,+,+).
  PoincareGaugeField wave;
  for (int mu = 0; mu < 4; ++mu) {
    const PoincareGaugeField d2 = second_derivative(cfg, center, x, mu, h);
    wave = wave + kEtaDiag[static_cast<std::size_t>(mu)] * d2;
  }

  FieldEquationResidual res;
  res.a = wave.a;
  res.b = wave.b;
  return res;
}

FieldEquationResidual nonlinear_residual(const GaugeFieldConfiguration& cfg,
                                         const FourVector& x, const Constants& consts,
                                         const ResidualOptions& opt) {
  const double h = opt.step > 0.0 ? opt.step : 1e-3;
  const double g_over_lambda = consts.g_coupling / consts.lambda_planck;

  const PoincareGaugeField field = cfg.evaluate(x);
  const FieldStrengths F = field_strengths(cfg, x, consts);

  // dF[rho] = partial_rho of the strengths, 4th-order central difference.
  std::array<FieldStrengths, 4> dF;
  for (int rho = 0; rho < 4; ++rho) {
    auto strengths_at = [&](double s) {
      FourVector xs = x;
      xs[rho] += s;
      return field_strengths(cfg, xs, consts);
    };
    dF[rho] = (1.0 / (12.0 * h)) *
              (strengths_at(-2.0 * h) - 8.0 * strengths_at(-h) + 8.0 * strengths_at(h) -
               strengths_at(2.0 * h));
  }

  FieldEquationResidual res;
  for (int nu = 0; nu < 4; ++nu) {
    for (int al = 0; al < 4; ++al) {
      double v = 0.0;
      for (int mu = 0; mu < 4; ++mu) {
        const double eta_mu = kEtaDiag[static_cast<std::size_t>(mu)];
        v += eta_mu * dF[mu].f_comp(mu, nu, al);
        for (int be = 0; be < 4; ++be) {
          const double eta_be = kEtaDiag[static_cast<std::size_t>(be)];
          v += g_over_lambda * eta_mu *
               (field.a[mu][be] * eta_be * F.h_comp(mu, nu, al, be) -
                field.b[mu].mixed(al, be) * F.f_comp(mu, nu, be));
        }
      }
      res.a[nu][al] = v;
    }

    AntisymTensor rb;
    for (int mu = 0; mu < 4; ++mu) {
      if (mu == nu) continue;
      const double eta_mu = kEtaDiag[static_cast<std::size_t>(mu)];
      AntisymTensor dh;
      for (std::size_t q = 0; q < 6; ++q) {
        const auto [a_idx, b_idx] = AntisymTensor::kPairs[q];
        dh.c[q] = dF[mu].h_comp(mu, nu, a_idx, b_idx);
      }
      // Signed h_{mu nu} for the commutator with b^mu.
      AntisymTensor h_munu;
      for (std::size_t q = 0; q < 6; ++q) {
        const auto [a_idx, b_idx] = AntisymTensor::kPairs[q];
        h_munu.c[q] = F.h_comp(mu, nu, a_idx, b_idx);
      }
      rb = rb + eta_mu * (dh + g_over_lambda * commutator(h_munu, field.b[mu]));
    }
    res.b[nu] = rb;
  }
  return res;
}

}  // namespace pgrav
