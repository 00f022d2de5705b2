// Finite-difference verifiers for the field equations, evaluated off sources
// where the point-particle currents vanish.
#pragma once

#include "pgrav/algebra.hpp"
#include "pgrav/constants.hpp"
#include "pgrav/source.hpp"

namespace pgrav {

// Left-hand sides of the two field equations; zero for exact solutions.
struct FieldEquationResidual {
  std::array<std::array<double, 4>, 4> a{};  // translation equation, res[nu][alpha]
  std::array<AntisymTensor, 4> b{};          // rotation equation, res[nu]
  double max_abs() const;
};

struct ResidualOptions {
  // FD step. When <= 0, linearized_residual uses step_factor times the
  // retarded distance to the source and nonlinear_residual uses 1e-3.
  double step = 0.0;
  double step_factor = 2e-3;
};

// Wave operator applied to the potentials (linearized equations away from
// the source): res_mu^alpha = partial^2 a_mu^alpha and likewise for b, via
// 4th-order central second differences. The source fixes the local length
// scale and guards the off-worldline precondition.
FieldEquationResidual linearized_residual(const GaugeFieldConfiguration& cfg,
                                          const FourVector& x, const SourceParticle& s,
                                          const ResidualOptions& opt = {});

// Full left-hand sides including the coupled bilinear terms:
//   res_nu^alpha = partial^mu f_{mu nu}^alpha
//                + g lambda^-1 (a^{mu beta} h_{mu nu}^alpha_beta
//                               - b^{mu alpha}_beta f_{mu nu}^beta)
//   res_nu^{ab}  = partial^mu h_{mu nu}^{ab}
//                + g lambda^-1 [h_{mu nu}, b^mu]^{ab}.
FieldEquationResidual nonlinear_residual(const GaugeFieldConfiguration& cfg,
                                         const FourVector& x, const Constants& consts,
                                         const ResidualOptions& opt = {});

}  // namespace pgrav
