#include <array>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "pgrav/fourvec.hpp"

using namespace pgrav;

TEST_CASE("vec3 algebra") {
  const Vec3 a{1.0, 2.0, 3.0};
  const Vec3 b{4.0, -5.0, 6.0};
  CHECK(dot(a, b) == doctest::Approx(12.0));
  const Vec3 c = cross(a, b);
  CHECK(c.x == doctest::Approx(27.0));
  CHECK(c.y == doctest::Approx(6.0));
  CHECK(c.z == doctest::Approx(-13.0));
  CHECK(norm(Vec3{3.0, 4.0, 0.0}) == doctest::Approx(5.0));
}

TEST_CASE("lowering flips only the time component") {
  const FourVector v = four(1.0, {2.0, 3.0, 4.0});
  const FourVector vl = lower(v);
  CHECK(vl[0] == -1.0);
  CHECK(vl[1] == 2.0);
  CHECK(vl[2] == 3.0);
  CHECK(vl[3] == 4.0);
  CHECK(vl.pos == IndexPosition::lower);
  const FourVector back = raise(vl);
  CHECK(back[0] == 1.0);
  CHECK(back.pos == IndexPosition::upper);
  CHECK(minkowski_dot(v, v) == doctest::Approx(-1.0 + 4.0 + 9.0 + 16.0));
  CHECK(minkowski_dot(four(1.0, {0.0, 0.0, 0.0}),
                      four(1.0, {0.0, 0.0, 0.0})) == doctest::Approx(-1.0));
}

TEST_CASE("antisym tensor components and index motion") {
  AntisymTensor m;
  m.set(1, 2, 7.0);
  CHECK(m.comp(1, 2) == 7.0);
  CHECK(m.comp(2, 1) == -7.0);
  CHECK(m.comp(3, 3) == 0.0);
  CHECK(m.lowered(1, 2) == 7.0);

  AntisymTensor boost;
  boost.set(0, 1, 5.0);
  CHECK(boost.lowered(0, 1) == -5.0);
  CHECK(boost.mixed(0, 1) == 5.0);
  CHECK(boost.mixed(1, 0) == 5.0);

  for (int q = 0; q < 6; ++q) {
    const auto [a, b] = AntisymTensor::kPairs[q];
    CHECK(AntisymTensor::pair_index(a, b) == q);
  }
  CHECK_THROWS_AS(m.set(2, 2, 1.0), ValidationError);
}

TEST_CASE("double contraction counts each pair twice with metric signs") {
  AntisymTensor rot;
  rot.set(1, 2, 1.0);
  CHECK(double_contract(rot, rot) == doctest::Approx(2.0));
  AntisymTensor boost;
  boost.set(0, 1, 1.0);
  CHECK(double_contract(boost, boost) == doctest::Approx(-2.0));
  CHECK(double_contract(rot, boost) == doctest::Approx(0.0));
}

TEST_CASE("mixed application reproduces the boost action by hand") {
  AntisymTensor boost;
  boost.set(0, 1, 1.0);
  const FourVector et = four(1.0, {0.0, 0.0, 0.0});
  const FourVector r = mixed_apply(boost, et);
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(r[2] == 0.0);
  CHECK(r[3] == 0.0);
  const FourVector ex = four(0.0, {1.0, 0.0, 0.0});
  const FourVector r2 = mixed_apply(boost, ex);
  CHECK(r2[0] == doctest::Approx(1.0));
  CHECK(r2[1] == doctest::Approx(0.0));
}

TEST_CASE("commutator agrees with the explicit mixed-matrix product") {
  AntisymTensor m1;
  m1.set(0, 1, 0.7);
  m1.set(1, 2, -1.3);
  m1.set(0, 3, 0.4);
  AntisymTensor m2;
  m2.set(2, 3, 0.9);
  m2.set(0, 2, -0.6);
  m2.set(1, 3, 1.1);

  const auto mixed_matrix = [](const AntisymTensor& m) {
    std::array<std::array<double, 4>, 4> out{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) out[a][b] = m.mixed(a, b);
    return out;
  };
  const auto a = mixed_matrix(m1);
  const auto b = mixed_matrix(m2);
  std::array<std::array<double, 4>, 4> c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];

  const AntisymTensor viaPairs = commutator(m1, m2);
  const std::array<double, 4> etaDiag{-1.0, 1.0, 1.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      // Re-raise the second index of the mixed-matrix result.
      const double raised = c[i][j] * etaDiag[static_cast<std::size_t>(j)];
      CHECK(viaPairs.comp(i, j) == doctest::Approx(raised).epsilon(1e-14));
    }
  }
}

TEST_CASE("wedge components by hand") {
  const FourVector y = four(1.0, {2.0, 3.0, 4.0});
  const FourVector u = four(5.0, {6.0, 7.0, 8.0});
  const AntisymTensor w = wedge(y, u);
  CHECK(w.comp(0, 1) == doctest::Approx(1.0 * 6.0 - 2.0 * 5.0));
  CHECK(w.comp(1, 0) == doctest::Approx(-(1.0 * 6.0 - 2.0 * 5.0)));
  CHECK(w.comp(2, 3) == doctest::Approx(3.0 * 8.0 - 4.0 * 7.0));
  CHECK(w.comp(1, 3) == doctest::Approx(2.0 * 8.0 - 4.0 * 6.0));
}

TEST_CASE("antisym_from_full round trips and rejects symmetric parts") {
  AntisymTensor m;
  m.set(0, 2, 1.5);
  m.set(1, 3, -2.5);
  std::array<std::array<double, 4>, 4> full{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) full[a][b] = m.comp(a, b);
  const AntisymTensor back = antisym_from_full(full);
  for (int q = 0; q < 6; ++q) CHECK(back.c[q] == m.c[q]);

  full[1][2] = 1.0;  // break antisymmetry
  CHECK_THROWS_AS(antisym_from_full(full), ValidationError);
}

TEST_CASE("pairwise sum is exact on integers and stable on long runs") {
  const std::vector<double> small{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(pairwise_sum(small) == 15.0);
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);

  std::vector<double> many(10000, 0.1);
  const double got = pairwise_sum(many);
  CHECK(got == doctest::Approx(1000.0).epsilon(1e-12));
}
