#pragma once

#include <string>

namespace goldilocks::cli {

/// Dimensions accepted by the config schema. Every dimensioned value in
/// a config file must carry an explicit unit suffix; bare numbers are
/// only accepted for dimensionless keys.
enum class UnitDim {
  dimensionless,
  length,
  area,
  time,
  temperature,
  mass,
  flux_density,     // 1/(m^2 s)
  rate,             // 1/s
};

const char* dim_name(UnitDim dim);

struct Quantity {
  double value_si = 0.0;
  UnitDim dim = UnitDim::dimensionless;
};

/// Parse "<number> [unit]", e.g. "1064 nm", "1e-4 1/(nm^2 s)", "2.1".
/// Unknown units throw std::invalid_argument.
Quantity parse_quantity(const std::string& text);

/// Convert to SI, checking the dimension matches.
double quantity_as(const std::string& text, UnitDim expected, const std::string& key);

}  // namespace goldilocks::cli
