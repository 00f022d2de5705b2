#include <cmath>

#include "doctest.h"
#include "pgrav/errors.hpp"
#include "pgrav/units.hpp"

using namespace pgrav;

namespace {
const UnitSystem kU{};

double to_geo(double v, Dimension d) {
  return convert_units(v, d, Direction::si_to_geometrized, kU);
}
double to_si(double v, Dimension d) {
  return convert_units(v, d, Direction::geometrized_to_si, kU);
}
}

TEST_CASE("factors are the G and c monomials") {
  CHECK(kU.factor(Dimension::length) == 1.0);
  CHECK(kU.factor(Dimension::velocity) == doctest::Approx(1.0 / si::kC).epsilon(1e-15));
  CHECK(kU.factor(Dimension::mass) ==
        doctest::Approx(si::kG / (si::kC * si::kC)).epsilon(1e-15));
  CHECK(kU.factor(Dimension::time) == doctest::Approx(si::kC).epsilon(1e-15));
  CHECK(kU.factor(Dimension::power) ==
        doctest::Approx(si::kG / std::pow(si::kC, 5)).epsilon(1e-15));
  // Acceleration = velocity / time, energy = power * time.
  CHECK(kU.factor(Dimension::acceleration) ==
        doctest::Approx(kU.factor(Dimension::velocity) / kU.factor(Dimension::time))
            .epsilon(1e-15));
  CHECK(kU.factor(Dimension::energy) ==
        doctest::Approx(kU.factor(Dimension::power) * kU.factor(Dimension::time))
            .epsilon(1e-15));
}

TEST_CASE("round trips are identity") {
  const Dimension dims[] = {Dimension::mass,     Dimension::length,
                            Dimension::time,     Dimension::velocity,
                            Dimension::acceleration, Dimension::energy,
                            Dimension::power};
  for (const Dimension d : dims) {
    const double v = 123.456;
    CHECK(to_si(to_geo(v, d), d) == doctest::Approx(v).epsilon(1e-14));
    CHECK(to_geo(to_si(v, d), d) == doctest::Approx(v).epsilon(1e-14));
  }
}

TEST_CASE("solar system anchors") {
  // Geometrized masses in meters.
  CHECK(to_geo(1.989e30, Dimension::mass) ==
        doctest::Approx(1477.0632775277024).epsilon(1e-12));
  CHECK(to_geo(5.972e24, Dimension::mass) ==
        doctest::Approx(0.004434902912717667).epsilon(1e-12));
  // Orbital speed as a fraction of c.
  CHECK(to_geo(2.978e4, Dimension::velocity) ==
        doctest::Approx(9.933538755000969e-05).epsilon(1e-12));
  // Dimensionless geometrized power to watts.
  CHECK(to_si(1.4261649760897786e-44, Dimension::power) ==
        doctest::Approx(517449006.8997336).epsilon(1e-12));
  // One second of coordinate time is c meters.
  CHECK(to_geo(1.0, Dimension::time) == doctest::Approx(si::kC));
}

TEST_CASE("dimension names round trip") {
  const Dimension dims[] = {Dimension::mass,     Dimension::length,
                            Dimension::time,     Dimension::velocity,
                            Dimension::acceleration, Dimension::energy,
                            Dimension::power};
  for (const Dimension d : dims) {
    CHECK(dimension_from_name(to_string(d)) == d);
  }
  CHECK(dimension_from_name("mass") == Dimension::mass);
  CHECK_THROWS_AS(dimension_from_name("furlongs"), UnknownDimensionError);
}
