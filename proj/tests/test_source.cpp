#include <cmath>

#include "doctest.h"
#include "pgrav/source.hpp"

using namespace pgrav;

namespace {
const Constants kC{};
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("retarded point of a static source") {
  SourceParticle src;
  src.mass = 2.0;
  src.worldline = Worldline::at_rest({0.0, 0.0, 0.0}, -100.0, 10.0, 16);

  const FourVector x = four(1.0, {5.0, 0.0, 0.0});
  const RetardedPoint rp = retarded_time(x, src.worldline);
  CHECK(rp.tau_plus == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(rp.y_plus[0] == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(rp.r == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(norm(rp.v_hat) == doctest::Approx(0.0));
  // kappa = r - r_vec . v_hat reduces to r for a static source.
  CHECK(rp.kappa == doctest::Approx(5.0));
  CHECK(rp.u_plus[0] == doctest::Approx(1.0));
}

TEST_CASE("retarded point of a uniformly moving source matches the quadratic") {
  SourceParticle src;
  src.mass = 1.0;
  src.worldline =
      Worldline::uniform_velocity({0.0, 0.0, 0.0}, {0.5, 0.0, 0.0}, -40.0, 40.0, 32);

  // Observer (t, X) = (2, 10): |X - 0.5 t_r| = 2 - t_r gives t_r = -16.
  const FourVector x = four(2.0, {10.0, 0.0, 0.0});
  const RetardedPoint rp = retarded_time(x, src.worldline);
  CHECK(rp.y_plus[0] == doctest::Approx(-16.0).epsilon(1e-10));
  CHECK(rp.y_plus[1] == doctest::Approx(-8.0).epsilon(1e-10));
  CHECK(rp.r == doctest::Approx(18.0).epsilon(1e-10));
  CHECK(rp.v_hat.x == doctest::Approx(0.5).epsilon(1e-10));
  // kappa = r - r_vec . v_hat = 18 - 18 * 0.5.
  CHECK(rp.kappa == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("retarded solve guards") {
  SourceParticle src;
  src.worldline = Worldline::at_rest({0.0, 0.0, 0.0}, -5.0, 5.0, 8);
  CHECK_THROWS_AS(retarded_time(four(0.0, {1e-9, 0.0, 0.0}), src.worldline),
                  SingularError);
  CHECK_THROWS_AS(retarded_time(four(100.0, {1.0, 0.0, 0.0}), src.worldline),
                  NotCoveredError);
}

TEST_CASE("static potentials carry the closed-form coefficient") {
  SourceParticle src;
  src.mass = 2.0;
  src.worldline = Worldline::at_rest({0.0, 0.0, 0.0}, -100.0, 10.0, 16);

  const FourVector x = four(1.0, {5.0, 0.0, 0.0});
  const PoincareGaugeField pot = lienard_wiechert(x, src, kC);
  // a_0^0 = (lambda^2/4pi) P^0 u_0 / (gamma kappa) with P = (m,0,0,0),
  // u_0 = -1, kappa = r: the static potential is negative.
  CHECK(pot.a[0][0] == doctest::Approx(-src.mass / (4.0 * kPi * 5.0)).epsilon(1e-12));
  for (int mu = 1; mu < 4; ++mu)
    for (int al = 0; al < 4; ++al) CHECK(pot.a[mu][al] == doctest::Approx(0.0));
  for (int al = 1; al < 4; ++al) CHECK(pot.a[0][al] == doctest::Approx(0.0));
  for (int mu = 0; mu < 4; ++mu)
    for (int q = 0; q < 6; ++q) CHECK(pot.b[mu].c[q] == doctest::Approx(0.0));

  // 1/r falloff.
  const PoincareGaugeField far = lienard_wiechert(four(1.0, {50.0, 0.0, 0.0}), src, kC);
  CHECK(pot.a[0][0] / far.a[0][0] == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("displaced reference event switches on the rotation potential") {
  SourceParticle src;
  src.mass = 2.0;
  src.worldline = Worldline::at_rest({0.0, 0.0, 0.0}, -100.0, 10.0, 16);
  src.origin = four(0.0, {0.0, 0.0, 1.0});

  // M = m (y - origin) ^ u has the single constant component
  // M^{03} = -m (y-origin)^3 u^0 = 2.
  const ParticleCharges ch = src.charges_at(-4.0);
  CHECK(ch.m.comp(0, 3) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ch.m.comp(1, 2) == doctest::Approx(0.0));
  CHECK(ch.p[0] == doctest::Approx(2.0));

  const FourVector x = four(1.0, {5.0, 0.0, 0.0});
  const PoincareGaugeField pot = lienard_wiechert(x, src, kC);
  // b_0 = -(lambda/8pi) M u_0 / (gamma kappa) = + M / (8 pi r) for kappa = r.
  CHECK(pot.b[0].comp(0, 3) == doctest::Approx(2.0 / (8.0 * kPi * 5.0)).epsilon(1e-12));
  for (int mu = 1; mu < 4; ++mu)
    for (int q = 0; q < 6; ++q) CHECK(pot.b[mu].c[q] == doctest::Approx(0.0));
}

TEST_CASE("dynamic charges of a circular orbit keep the orbital component") {
  SourceParticle src;
  src.mass = 1.5;
  const double rho = 2.0;
  const double omega = 0.25;
  const double v = rho * omega;
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  src.worldline = Worldline::circular({0.0, 0.0, 0.0}, rho, omega, 0.0, 0.0, 30.0, 1001);
  src.origin = FourVector{};  // orbit center at the spatial origin

  for (const double tau : {0.0, 4.0, 13.5}) {
    const ParticleCharges ch = src.charges_at(tau);
    // P = m u.
    CHECK(ch.p[0] == doctest::Approx(src.mass * gamma).epsilon(1e-9));
    // The 12 component is the conserved orbital angular momentum
    // m gamma omega rho^2; the mixed time components oscillate.
    CHECK(ch.m.comp(1, 2) ==
          doctest::Approx(src.mass * gamma * omega * rho * rho).epsilon(1e-9));
  }
}

TEST_CASE("frozen charges are returned verbatim") {
  SourceParticle src;
  src.mass = 3.0;
  src.worldline = Worldline::at_rest({1.0, 0.0, 0.0}, -5.0, 5.0, 8);
  src.identification_mode = IdentificationMode::frozen;
  src.p_grav = four(3.0, {0.1, 0.0, 0.0});
  src.m_grav.set(1, 2, 0.7);

  const ParticleCharges ch = src.charges_at(2.0);
  CHECK(ch.p[1] == 0.1);
  CHECK(ch.m.comp(1, 2) == 0.7);
}

TEST_CASE("em decomposition round trips the strengths") {
  FieldStrengths F;
  for (int p = 0; p < 6; ++p) {
    for (int al = 0; al < 4; ++al) F.f[p][al] = 0.1 * (p + 1) + 0.01 * al;
    for (int q = 0; q < 6; ++q) F.h[p].c[q] = 0.2 * (p + 1) - 0.03 * q;
  }
  const FieldStrengths back = to_field_strengths(em_decompose(F));
  for (int p = 0; p < 6; ++p) {
    for (int al = 0; al < 4; ++al) CHECK(back.f[p][al] == F.f[p][al]);
    for (int q = 0; q < 6; ++q) CHECK(back.h[p].c[q] == F.h[p].c[q]);
  }
}

TEST_CASE("static field strengths are radial with the closed-form magnitude") {
  SourceParticle src;
  src.mass = 2.0;
  src.worldline = Worldline::at_rest({0.0, 0.0, 0.0}, -100.0, 10.0, 16);

  const double r = 5.0;
  const FourVector x = four(1.0, {0.0, r, 0.0});
  const EMDecomposition em = field_strengths_at(x, src, kC);
  // Physical strength (one coupling factor): |d^0| = g m / (4 pi r^2).
  const double expected = kC.g_coupling * src.mass / (4.0 * kPi * r * r);
  CHECK(norm(em.d[0]) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(norm(cross(em.d[0], Vec3{0.0, 1.0, 0.0})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  for (int al = 1; al < 4; ++al) CHECK(norm(em.d[al]) == doctest::Approx(0.0));
  for (int q = 0; q < 6; ++q) CHECK(norm(em.h_rot[q]) == doctest::Approx(0.0));

  // The configuration path (coefficient potentials, analytic retarded
  // derivatives) agrees after scaling by the coupling.
  const GaugeFieldConfiguration cfg = lienard_wiechert_config(src, kC);
  const FieldStrengths viaConfig = kC.g_coupling * field_strengths(cfg, x, kC);
  const FieldStrengths direct = to_field_strengths(em);
  for (int p = 0; p < 6; ++p)
    for (int al = 0; al < 4; ++al)
      CHECK(viaConfig.f[p][al] == doctest::Approx(direct.f[p][al]).epsilon(1e-6));
}
