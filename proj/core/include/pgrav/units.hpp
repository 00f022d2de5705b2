// SI <-> geometrized (G = c = 1) unit conversion. Internal computations are
// geometrized throughout; SI appears only at the input/output boundary.
#pragma once

#include <string_view>

#include "pgrav/constants.hpp"

namespace pgrav {

enum class Dimension {
  mass,
  length,
  time,
  velocity,
  acceleration,
  energy,
  power,
};

enum class Direction {
  si_to_geometrized,
  geometrized_to_si,
};

// Conversion factors are derived from (G, c) so that SI value * factor(dim)
// is the geometrized value; geometrized lengths are meters, everything else
// is a power of meters. Round trips are identity within 1e-14 relative.
struct UnitSystem {
  double g_si = si::kG;
  double c_si = si::kC;

  // SI -> geometrized multiplier for one dimension tag.
  double factor(Dimension dim) const;
};

double convert_units(double value, Dimension dim, Direction dir,
                     const UnitSystem& units = {});

// Name <-> tag mapping for config files; throws UnknownDimensionError for
// names outside the table.
Dimension dimension_from_name(std::string_view name);
std::string_view to_string(Dimension dim);

}  // namespace pgrav
