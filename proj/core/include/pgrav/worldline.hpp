// Sampled timelike worldlines with C1 interpolation, plus CSV import/export.
//
// A worldline stores proper-time samples (tau, y, u, du). Position is a cubic
// Hermite through (y, u); velocity is a cubic Hermite through (u, du);
// acceleration differentiates the velocity interpolant. Analytic builders
// fill du exactly, CSV import reconstructs it by finite differences.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "pgrav/errors.hpp"
#include "pgrav/fourvec.hpp"

namespace pgrav {

struct WorldlineSample {
  double tau = 0.0;
  FourVector y;   // event, upper index
  FourVector u;   // four-velocity dy/dtau, upper index
  FourVector du;  // four-acceleration du/dtau, upper index
};

class Worldline {
 public:
  Worldline() = default;

  // Validates every sample: tau and y0 strictly increasing, u0 > 0,
  // |u.u + 1| <= u_norm_tol. Throws ValidationError on violation.
  static Worldline from_samples(std::vector<WorldlineSample> samples,
                                double u_norm_tol = 1e-9);

  // Appends one sample, enforcing the same invariants against the tail.
  void push_back(const WorldlineSample& s);

  double tau_min() const;
  double tau_max() const;
  std::size_t size() const { return samples_.size(); }
  const std::vector<WorldlineSample>& samples() const { return samples_; }

  // Interpolated kinematics at proper time tau. Throws NotCoveredError
  // outside [tau_min, tau_max] (beyond a small round-off allowance).
  FourVector position(double tau) const;
  FourVector velocity(double tau) const;
  FourVector acceleration(double tau) const;
  WorldlineSample state(double tau) const;

  // ----- analytic builders (n samples spanning [tau0, tau1]) -----

  // Particle at rest at x: y = (tau, x), u = (1, 0).
  static Worldline at_rest(const Vec3& x, double tau0, double tau1, std::size_t n);

  // Straight line through x0 at tau = 0 with coordinate velocity v, |v| < 1.
  static Worldline uniform_velocity(const Vec3& x0, const Vec3& v, double tau0,
                                    double tau1, std::size_t n);

  // Coordinate-circular motion in the plane spanned by e1, e2 around center:
  //   x(t) = center + rho (e1 cos(omega t + phase) + e2 sin(omega t + phase)),
  // with t = gamma tau and constant speed rho|omega| < 1.
  static Worldline circular(const Vec3& center, double rho, double omega,
                            double phase, double tau0, double tau1, std::size_t n);

 private:
  // Index i of the segment [tau_i, tau_{i+1}] containing tau.
  std::size_t segment(double tau) const;

  std::vector<WorldlineSample> samples_;
  double u_norm_tol_ = 1e-9;
};

// CSV round trip. Columns: tau,y0,y1,y2,y3,u0,u1,u2,u3 with a mandatory
// header row; '.' decimal, ',' separator, LF line endings. Import rebuilds
// du from the u samples by three-point finite differences.
void save_worldline_csv(const Worldline& w, std::ostream& out);
void save_worldline_csv(const Worldline& w, const std::filesystem::path& path);
Worldline load_worldline_csv(std::istream& in, double u_norm_tol = 1e-9);
Worldline load_worldline_csv(const std::filesystem::path& path, double u_norm_tol = 1e-9);

}  // namespace pgrav
