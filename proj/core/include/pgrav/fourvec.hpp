// Minkowski primitives: metric, three-vectors, four-vectors, antisymmetric
// rank-2 inner tensors.
//
// Conventions (fixed project-wide):
//   * signature (-,+,+,+), eta = diag(-1,1,1,1);
//   * FourVector and AntisymTensor store upper-index components; lowering is
//     always explicit through lower() / lowered() / eta();
//   * gauge potentials and field strengths keep their natural lower spacetime
//     indices (a_mu^alpha, f_{mu nu}^alpha) -- see algebra.hpp -- so the
//     component formulas transcribe one-to-one.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "pgrav/errors.hpp"

namespace pgrav {

inline constexpr std::array<double, 4> kEtaDiag = {-1.0, 1.0, 1.0, 1.0};

constexpr double eta(int mu, int nu) {
  return mu == nu ? kEtaDiag[static_cast<std::size_t>(mu)] : 0.0;
}

// ---------------------------------------------------------------------------
// Spatial three-vectors.

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return s * a; }
inline Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// ---------------------------------------------------------------------------
// Four-vectors with a declared index position.

enum class IndexPosition { upper, lower };

struct FourVector {
  std::array<double, 4> c{};
  IndexPosition pos = IndexPosition::upper;

  FourVector() = default;
  FourVector(double c0, double c1, double c2, double c3,
             IndexPosition p = IndexPosition::upper)
      : c{c0, c1, c2, c3}, pos(p) {}

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  double t() const { return c[0]; }
  Vec3 spatial() const { return {c[1], c[2], c[3]}; }
};

inline FourVector four(double t, const Vec3& s, IndexPosition p = IndexPosition::upper) {
  return {t, s.x, s.y, s.z, p};
}

// eta flips only the time component, so raising and lowering share one kernel.
inline FourVector lower(const FourVector& v) {
  FourVector r = v;
  r.c[0] = -r.c[0];
  r.pos = (v.pos == IndexPosition::upper) ? IndexPosition::lower : IndexPosition::upper;
  return r;
}
inline FourVector raise(const FourVector& v) { return lower(v); }

// Invariant product. Same index position contracts through eta; opposite
// positions contract directly.
inline double minkowski_dot(const FourVector& a, const FourVector& b) {
  if (a.pos == b.pos) {
    return -a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
  }
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

inline FourVector operator+(const FourVector& a, const FourVector& b) {
  return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3], a.pos};
}
inline FourVector operator-(const FourVector& a, const FourVector& b) {
  return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3], a.pos};
}
inline FourVector operator*(double s, const FourVector& a) {
  return {s * a.c[0], s * a.c[1], s * a.c[2], s * a.c[3], a.pos};
}
inline FourVector operator*(const FourVector& a, double s) { return s * a; }

// ---------------------------------------------------------------------------
// Antisymmetric rank-2 tensors over the inner Minkowski indices (upper
// components). Storage keeps the six independent entries, so antisymmetry is
// exact by construction.

struct AntisymTensor {
  // Component order: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
  std::array<double, 6> c{};

  static constexpr std::array<std::array<int, 2>, 6> kPairs = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

  // Pair slot for a < b.
  static constexpr int pair_index(int a, int b) {
    // Offsets 0,3,5 for rows a = 0,1,2.
    constexpr int row_off[3] = {0, 3, 5};
    return row_off[a] + (b - a - 1);
  }

  // Full component M^{ab} with the antisymmetry sign applied.
  double comp(int a, int b) const {
    if (a == b) return 0.0;
    return a < b ? c[static_cast<std::size_t>(pair_index(a, b))]
                 : -c[static_cast<std::size_t>(pair_index(b, a))];
  }

  // Fully lowered component M_{ab} = eta_{aa} eta_{bb} M^{ab}.
  double lowered(int a, int b) const {
    return kEtaDiag[static_cast<std::size_t>(a)] * kEtaDiag[static_cast<std::size_t>(b)] * comp(a, b);
  }

  // Mixed component M^a_b = M^{ac} eta_{cb}.
  double mixed(int a, int b) const {
    return comp(a, b) * kEtaDiag[static_cast<std::size_t>(b)];
  }

  void set(int a, int b, double v) {
    if (a == b) throw ValidationError("AntisymTensor::set: diagonal entry must stay zero");
    if (a < b) {
      c[static_cast<std::size_t>(pair_index(a, b))] = v;
    } else {
      c[static_cast<std::size_t>(pair_index(b, a))] = -v;
    }
  }
};

inline AntisymTensor operator+(const AntisymTensor& a, const AntisymTensor& b) {
  AntisymTensor r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}
inline AntisymTensor operator-(const AntisymTensor& a, const AntisymTensor& b) {
  AntisymTensor r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}
inline AntisymTensor operator*(double s, const AntisymTensor& a) {
  AntisymTensor r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = s * a.c[i];
  return r;
}
inline AntisymTensor operator*(const AntisymTensor& a, double s) { return s * a; }

// Builds from a full 4x4 upper-index matrix, checking antisymmetry to tol
// relative to the largest entry.
AntisymTensor antisym_from_full(const std::array<std::array<double, 4>, 4>& m,
                                double tol = 1e-12);

// Full double contraction M^{ab} N_{ab} (sums over all ordered index pairs,
// so each independent pair counts twice).
double double_contract(const AntisymTensor& m, const AntisymTensor& n);

// (M v)^a = M^a_b v^b for an upper-index v.
FourVector mixed_apply(const AntisymTensor& m, const FourVector& v);

// Matrix commutator [m, n]^a_b in the mixed representation, returned with the
// first index re-raised. Closed on antisymmetric tensors (Lorentz algebra).
AntisymTensor commutator(const AntisymTensor& m, const AntisymTensor& n);

// y^a u^b - y^b u^a for upper-index inputs.
AntisymTensor wedge(const FourVector& y, const FourVector& u);

// ---------------------------------------------------------------------------
// Deterministic reductions.

// Pairwise summation: fixed association order independent of chunking, with
// O(log n) rounding-error growth.
double pairwise_sum(std::span<const double> values);

}  // namespace pgrav
