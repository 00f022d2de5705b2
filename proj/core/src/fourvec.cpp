#include "pgrav/fourvec.hpp"

#include <algorithm>
#include <cmath>

namespace pgrav {

AntisymTensor antisym_from_full(const std::array<std::array<double, 4>, 4>& m,
                                double tol) {
  double scale = 0.0;
  for (const auto& row : m)
    for (double v : row) scale = std::max(scale, std::abs(v));
  const double bound = tol * std::max(scale, 1.0);

  for (int a = 0; a < 4; ++a) {
    if (std::abs(m[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)]) > bound)
      throw ValidationError("antisym_from_full: nonzero diagonal entry");
    for (int b = a + 1; b < 4; ++b) {
      const double sym = m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +
                         m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
      if (std::abs(sym) > bound)
        throw ValidationError("antisym_from_full: matrix is not antisymmetric");
    }
  }

  AntisymTensor r;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto [a, b] = AntisymTensor::kPairs[i];
    r.c[i] = m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  return r;
}

double double_contract(const AntisymTensor& m, const AntisymTensor& n) {
  // M^{ab} N_{ab} = 2 sum_{a<b} M^{ab} N_{ab}.
  double s = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto [a, b] = AntisymTensor::kPairs[i];
    s += m.c[i] * n.lowered(a, b);
  }
  return 2.0 * s;
}

FourVector mixed_apply(const AntisymTensor& m, const FourVector& v) {
  if (v.pos != IndexPosition::upper)
    throw ValidationError("mixed_apply: expected an upper-index four-vector");
  FourVector r{0.0, 0.0, 0.0, 0.0, IndexPosition::upper};
  for (int a = 0; a < 4; ++a) {
    double s = 0.0;
    for (int b = 0; b < 4; ++b) s += m.mixed(a, b) * v[b];
    r[a] = s;
  }
  return r;
}

AntisymTensor commutator(const AntisymTensor& m, const AntisymTensor& n) {
  // [m, n]^a_b = m^a_c n^c_b - n^a_c m^c_b, then raise b. The mixed product
  // of two antisymmetric tensors closes on antisymmetric tensors, so the
  // strict check in antisym_from_full only guards against coding errors.
  std::array<std::array<double, 4>, 4> full{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int cidx = 0; cidx < 4; ++cidx) {
        s += m.mixed(a, cidx) * n.mixed(cidx, b) - n.mixed(a, cidx) * m.mixed(cidx, b);
      }
      // Raise the second index: [m,n]^{ab} = [m,n]^a_c eta^{cb}.
      full[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          s * kEtaDiag[static_cast<std::size_t>(b)];
    }
  }
  return antisym_from_full(full, 1e-9);
}

AntisymTensor wedge(const FourVector& y, const FourVector& u) {
  if (y.pos != IndexPosition::upper || u.pos != IndexPosition::upper)
    throw ValidationError("wedge: expected upper-index four-vectors");
  AntisymTensor r;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto [a, b] = AntisymTensor::kPairs[i];
    r.c[i] = y[a] * u[b] - y[b] * u[a];
  }
  return r;
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace pgrav
