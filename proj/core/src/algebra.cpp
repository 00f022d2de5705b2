#include "pgrav/algebra.hpp"

namespace pgrav {

PoincareParameter parameter_commutator(const PoincareParameter& p1,
                                       const PoincareParameter& p2,
                                       const Constants& consts) {
  const double inv_lambda = 1.0 / consts.lambda_planck;
  PoincareParameter out;
  out.epsilon = inv_lambda * (mixed_apply(p1.omega, p2.epsilon) -
                              mixed_apply(p2.omega, p1.epsilon));
  out.omega = inv_lambda * commutator(p1.omega, p2.omega);
  return out;
}

FourVector expand_parameter(const PoincareParameter& p, const FourVector& X,
                            const Constants& consts) {
  return p.epsilon + (1.0 / consts.lambda_planck) * mixed_apply(p.omega, X);
}

PoincareGaugeField operator+(const PoincareGaugeField& x, const PoincareGaugeField& y) {
  PoincareGaugeField r;
  for (int mu = 0; mu < 4; ++mu) {
    for (int al = 0; al < 4; ++al) r.a[mu][al] = x.a[mu][al] + y.a[mu][al];
    r.b[mu] = x.b[mu] + y.b[mu];
  }
  return r;
}

PoincareGaugeField operator-(const PoincareGaugeField& x, const PoincareGaugeField& y) {
  return x + (-1.0) * y;
}

PoincareGaugeField operator*(double s, const PoincareGaugeField& x) {
  PoincareGaugeField r;
  for (int mu = 0; mu < 4; ++mu) {
    for (int al = 0; al < 4; ++al) r.a[mu][al] = s * x.a[mu][al];
    r.b[mu] = s * x.b[mu];
  }
  return r;
}

double FieldStrengths::f_comp(int mu, int nu, int alpha) const {
  if (mu == nu) return 0.0;
  if (mu < nu) return f[AntisymTensor::pair_index(mu, nu)][alpha];
  return -f[AntisymTensor::pair_index(nu, mu)][alpha];
}

double FieldStrengths::h_comp(int mu, int nu, int alpha, int beta) const {
  if (mu == nu) return 0.0;
  if (mu < nu) return h[AntisymTensor::pair_index(mu, nu)].comp(alpha, beta);
  return -h[AntisymTensor::pair_index(nu, mu)].comp(alpha, beta);
}

FieldStrengths operator+(const FieldStrengths& x, const FieldStrengths& y) {
  FieldStrengths r;
  for (int p = 0; p < 6; ++p) {
    for (int al = 0; al < 4; ++al) r.f[p][al] = x.f[p][al] + y.f[p][al];
    r.h[p] = x.h[p] + y.h[p];
  }
  return r;
}

FieldStrengths operator-(const FieldStrengths& x, const FieldStrengths& y) {
  return x + (-1.0) * y;
}

FieldStrengths operator*(double s, const FieldStrengths& x) {
  FieldStrengths r;
  for (int p = 0; p < 6; ++p) {
    for (int al = 0; al < 4; ++al) r.f[p][al] = s * x.f[p][al];
    r.h[p] = s * x.h[p];
  }
  return r;
}

PoincareGaugeField GaugeFieldConfiguration::d(const FourVector& x, int mu) const {
  if (!evaluate) throw ValidationError("GaugeFieldConfiguration: evaluate is not set");
  if (derivative) return derivative(x, mu);
  if (fd_step <= 0.0)
    throw ValidationError("GaugeFieldConfiguration: fd_step must be positive");
  // 4th-order central difference along coordinate mu.
  auto shifted = [&](double s) {
    FourVector xs = x;
    xs[mu] += s;
    return evaluate(xs);
  };
  const double h = fd_step;
  return (1.0 / (12.0 * h)) *
         (shifted(-2.0 * h) - 8.0 * shifted(-h) + 8.0 * shifted(h) - shifted(2.0 * h));
}

FieldStrengths field_strengths(const GaugeFieldConfiguration& cfg, const FourVector& x,
                               const Constants& consts) {
  const double inv_lambda = 1.0 / consts.lambda_planck;
  const PoincareGaugeField field = cfg.evaluate(x);
  std::array<PoincareGaugeField, 4> grad;
  for (int mu = 0; mu < 4; ++mu) grad[mu] = cfg.d(x, mu);

  FieldStrengths out;
  for (int p = 0; p < 6; ++p) {
    const auto [mu, nu] = kSpacetimePairs[p];
    for (int al = 0; al < 4; ++al) {
      double v = grad[mu].a[nu][al] - grad[nu].a[mu][al];
      for (int be = 0; be < 4; ++be) {
        v += inv_lambda * (field.b[nu].mixed(al, be) * field.a[mu][be] -
                           field.b[mu].mixed(al, be) * field.a[nu][be]);
      }
      out.f[p][al] = v;
    }
    // [b_nu, b_mu] carries the quadratic part of h.
    out.h[p] = grad[mu].b[nu] - grad[nu].b[mu] +
               inv_lambda * commutator(field.b[nu], field.b[mu]);
  }
  return out;
}

PoincareGaugeField gauge_transform_fields(const PoincareGaugeField& field,
                                          const PoincareParameterGradient& d_param,
                                          const PoincareParameter& param,
                                          const Constants& consts) {
  const double inv_lambda = 1.0 / consts.lambda_planck;
  PoincareGaugeField delta;
  for (int mu = 0; mu < 4; ++mu) {
    for (int al = 0; al < 4; ++al) {
      double v = d_param.d_epsilon[mu][al];
      for (int be = 0; be < 4; ++be) {
        v += inv_lambda * (param.omega.mixed(al, be) * field.a[mu][be] -
                           field.b[mu].mixed(al, be) * param.epsilon[be]);
      }
      delta.a[mu][al] = v;
    }
    delta.b[mu] = d_param.d_omega[mu] + inv_lambda * commutator(param.omega, field.b[mu]);
  }
  return delta;
}

FieldStrengths gauge_transform_strengths(const FieldStrengths& F,
                                         const PoincareParameter& param,
                                         const Constants& consts) {
  const double inv_lambda = 1.0 / consts.lambda_planck;
  FieldStrengths delta;
  for (int p = 0; p < 6; ++p) {
    for (int al = 0; al < 4; ++al) {
      double v = 0.0;
      for (int be = 0; be < 4; ++be) {
        v += inv_lambda * (param.omega.mixed(al, be) * F.f[p][be] -
                           F.h[p].mixed(al, be) * param.epsilon[be]);
      }
      delta.f[p][al] = v;
    }
    delta.h[p] = inv_lambda * commutator(param.omega, F.h[p]);
  }
  return delta;
}

std::array<std::array<double, 4>, 6> reconstruct_full_strength(const FieldStrengths& F,
                                                               const FourVector& X,
                                                               const Constants& consts) {
  const double inv_lambda = 1.0 / consts.lambda_planck;
  std::array<std::array<double, 4>, 6> out{};
  for (int p = 0; p < 6; ++p) {
    const FourVector hx = mixed_apply(F.h[p], X);
    for (int al = 0; al < 4; ++al) out[p][al] = F.f[p][al] + inv_lambda * hx[al];
  }
  return out;
}

}  // namespace pgrav
