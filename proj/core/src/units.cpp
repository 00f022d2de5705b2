#include "pgrav/units.hpp"

#include <string>

#include "pgrav/errors.hpp"

namespace pgrav {

double UnitSystem::factor(Dimension dim) const {
  const double c2 = c_si * c_si;
  switch (dim) {
    case Dimension::mass:
      return g_si / c2;  // kg -> m
    case Dimension::length:
      return 1.0;  // m -> m
    case Dimension::time:
      return c_si;  // s -> m
    case Dimension::velocity:
      return 1.0 / c_si;  // m/s -> dimensionless
    case Dimension::acceleration:
      return 1.0 / c2;  // m/s^2 -> 1/m
    case Dimension::energy:
      return g_si / (c2 * c2);  // J -> m
    case Dimension::power:
      return g_si / (c2 * c2 * c_si);  // W -> dimensionless
  }
  throw UnknownDimensionError("factor: unknown dimension tag " +
                              std::to_string(static_cast<int>(dim)));
}

double convert_units(double value, Dimension dim, Direction dir,
                     const UnitSystem& units) {
  const double f = units.factor(dim);
  return dir == Direction::si_to_geometrized ? value * f : value / f;
}

Dimension dimension_from_name(std::string_view name) {
  if (name == "mass") return Dimension::mass;
  if (name == "length") return Dimension::length;
  if (name == "time") return Dimension::time;
  if (name == "velocity") return Dimension::velocity;
  if (name == "acceleration") return Dimension::acceleration;
  if (name == "energy") return Dimension::energy;
  if (name == "power") return Dimension::power;
  throw UnknownDimensionError("dimension_from_name: unknown dimension '" +
                              std::string(name) + "'");
}

std::string_view to_string(Dimension dim) {
  switch (dim) {
    case Dimension::mass:
      return "mass";
    case Dimension::length:
      return "length";
    case Dimension::time:
      return "time";
    case Dimension::velocity:
      return "velocity";
    case Dimension::acceleration:
      return "acceleration";
    case Dimension::energy:
      return "energy";
    case Dimension::power:
      return "power";
  }
  throw UnknownDimensionError("to_string: unknown dimension tag " +
                              std::to_string(static_cast<int>(dim)));
}

}  // namespace pgrav
