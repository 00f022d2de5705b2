#include <cmath>

#include "doctest.h"
#include "pgrav/dynamics.hpp"

using namespace pgrav;

namespace {
const Constants kC{};

FieldStrengths dense_strengths() {
  FieldStrengths F;
  for (int p = 0; p < 6; ++p) {
    for (int al = 0; al < 4; ++al) F.f[p][al] = 0.1 * (p + 1) + 0.01 * al;
    for (int q = 0; q < 6; ++q) F.h[p].c[q] = 0.2 * (p + 1) - 0.03 * q;
  }
  return F;
}
}

TEST_CASE("coupling bracket of two rest masses is minus their product") {
  const FourVector p{1.0, 0.0, 0.0, 0.0};
  const AntisymTensor zero;
  CHECK(coupling_bracket(p, zero, p, zero, kC) == doctest::Approx(-1.0));
  const FourVector q{3.0, 0.0, 0.0, 0.0};
  CHECK(coupling_bracket(p, zero, q, zero, kC) == doctest::Approx(-3.0));
}

TEST_CASE("coupling bracket rotation part counts each pair once after the quarter") {
  const FourVector zero;
  AntisymTensor m, n;
  m.set(1, 2, 2.0);
  n.set(1, 2, 3.0);
  // 1/4 M..N with both orderings summed: 1/4 * 2 * (2*3) = 3.
  CHECK(coupling_bracket(zero, m, zero, n, kC) == doctest::Approx(3.0));
  // A boost pair picks up one eta_00 = -1.
  AntisymTensor mb, nb;
  mb.set(0, 1, 2.0);
  nb.set(0, 1, 3.0);
  CHECK(coupling_bracket(zero, mb, zero, nb, kC) == doctest::Approx(-3.0));
}

TEST_CASE("identify copies the instantaneous charges and freezes them") {
  ParticleState st;
  st.mass = 2.0;
  st.u = FourVector{1.25, 0.75, 0.0, 0.0};
  st.y = FourVector{3.0, 1.0, 0.0, 0.0};

  const ParticleCharges before = st.charges();
  CHECK(before.p[0] == doctest::Approx(2.5));
  CHECK(before.p[1] == doctest::Approx(1.5));
  // M^{01} = m (y^0 u^1 - y^1 u^0) = 2 (2.25 - 1.25) = 2.
  CHECK(before.m.comp(0, 1) == doctest::Approx(2.0));

  const ParticleState frozen = identify(st);
  CHECK(frozen.identification_mode == IdentificationMode::frozen);
  CHECK(frozen.p_grav[0] == doctest::Approx(2.5));
  CHECK(frozen.m_grav.comp(0, 1) == doctest::Approx(2.0));
  // Frozen charges no longer track the kinematics.
  ParticleState moved = frozen;
  moved.y = FourVector{30.0, 10.0, 0.0, 0.0};
  CHECK(moved.charges().m.comp(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("four force is orthogonal to the four velocity") {
  ParticleState st;
  st.mass = 1.7;
  const Vec3 v{0.3, 0.2, 0.1};
  const double gamma = 1.0 / std::sqrt(1.0 - dot(v, v));
  st.u = four(gamma, gamma * v);
  st.y = FourVector{0.5, 1.0, 2.0, 3.0};

  const FieldStrengths F = dense_strengths();
  const FourVector f = four_force(st, F, kC);
  double scale = 1.0;
  for (int mu = 0; mu < 4; ++mu) scale = std::max(scale, std::abs(f[mu]));
  CHECK(std::abs(minkowski_dot(f, st.u)) <= 1e-12 * scale);

  const FourVector a = proper_acceleration(st, F, kC);
  for (int mu = 0; mu < 4; ++mu)
    CHECK(a[mu] == doctest::Approx(f[mu] / st.mass).epsilon(1e-14));
}

TEST_CASE("newtonian oracle") {
  const Vec3 a = newton_accel(2.0, {0.0, 0.0, 4.0}, kC);
  CHECK(a.x == doctest::Approx(0.0));
  CHECK(a.y == doctest::Approx(0.0));
  CHECK(a.z == doctest::Approx(-2.0 / 16.0));
  CHECK_THROWS_AS(newton_accel(1.0, {0.0, 0.0, 0.0}, kC), DomainError);
}

TEST_CASE("free particle steps along a straight line") {
  const ExternalField none = [](const FourVector&) { return FieldStrengths{}; };
  ParticleState st;
  const Vec3 v{0.6, 0.0, 0.0};
  const double gamma = 1.25;
  st.u = four(gamma, gamma * v);
  st.y = four(0.0, {1.0, 2.0, 3.0});

  for (const auto method : {IntegratorConfig::Method::rk4, IntegratorConfig::Method::rk45}) {
    IntegratorConfig cfg;
    cfg.method = method;
    cfg.dtau = 0.5;
    const ParticleState next = step(st, none, cfg, kC);
    CHECK(next.tau == doctest::Approx(0.5));
    CHECK(next.y[0] == doctest::Approx(gamma * 0.5).epsilon(1e-15));
    CHECK(next.y[1] == doctest::Approx(1.0 + gamma * 0.6 * 0.5).epsilon(1e-15));
    CHECK(next.u[0] == doctest::Approx(gamma).epsilon(1e-15));
    CHECK(next.u[2] == doctest::Approx(0.0));
  }
}

TEST_CASE("renormalization restores the velocity normalization") {
  const ExternalField none = [](const FourVector&) { return FieldStrengths{}; };
  ParticleState st;
  st.u = FourVector{1.25 + 3e-8, 0.75, 0.0, 0.0};

  IntegratorConfig cfg;
  cfg.dtau = 0.1;
  cfg.renormalize_u = true;
  const ParticleState next = step(st, none, cfg, kC);
  CHECK(std::abs(minkowski_dot(next.u, next.u) + 1.0) <= 1e-14);
}

TEST_CASE("a step that destroys the normalization is rejected") {
  FieldStrengths F;
  F.f[AntisymTensor::pair_index(0, 1)][0] = 1e3;
  const ExternalField huge = [&F](const FourVector&) { return F; };
  ParticleState st;
  IntegratorConfig cfg;
  cfg.method = IntegratorConfig::Method::rk4;
  cfg.dtau = 1.0;
  CHECK_THROWS_AS(step(st, huge, cfg, kC), ValidationError);
}
