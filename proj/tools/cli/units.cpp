#include "cli/units.hpp"

#include <cstdlib>
#include <map>
#include <stdexcept>

namespace goldilocks::cli {

namespace {

struct UnitEntry {
  double scale;
  UnitDim dim;
};

const std::map<std::string, UnitEntry>& unit_table() {
  static const std::map<std::string, UnitEntry> table = {
      {"m", {1.0, UnitDim::length}},
      {"mm", {1e-3, UnitDim::length}},
      {"um", {1e-6, UnitDim::length}},
      {"µm", {1e-6, UnitDim::length}},
      {"nm", {1e-9, UnitDim::length}},
      {"pm", {1e-12, UnitDim::length}},
      {"m^2", {1.0, UnitDim::area}},
      {"um^2", {1e-12, UnitDim::area}},
      {"nm^2", {1e-18, UnitDim::area}},
      {"s", {1.0, UnitDim::time}},
      {"ms", {1e-3, UnitDim::time}},
      {"K", {1.0, UnitDim::temperature}},
      {"kg", {1.0, UnitDim::mass}},
      {"1/s", {1.0, UnitDim::rate}},
      {"1/(m^2 s)", {1.0, UnitDim::flux_density}},
      {"1/(um^2 s)", {1e12, UnitDim::flux_density}},
      {"1/(nm^2 s)", {1e18, UnitDim::flux_density}},
  };
  return table;
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  bool prev_space = false;
  for (char c : s) {
    const bool sp = c == ' ' || c == '\t';
    if (sp && (prev_space || out.empty())) continue;
    out.push_back(sp ? ' ' : c);
    prev_space = sp;
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace

const char* dim_name(UnitDim dim) {
  switch (dim) {
    case UnitDim::dimensionless: return "dimensionless";
    case UnitDim::length: return "length";
    case UnitDim::area: return "area";
    case UnitDim::time: return "time";
    case UnitDim::temperature: return "temperature";
    case UnitDim::mass: return "mass";
    case UnitDim::flux_density: return "flux density";
    case UnitDim::rate: return "rate";
  }
  return "?";
}

Quantity parse_quantity(const std::string& text) {
  const std::string s = collapse_spaces(text);
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) {
    throw std::invalid_argument("expected a number in '" + text + "'");
  }
  std::string unit(end);
  if (!unit.empty() && unit.front() == ' ') unit.erase(unit.begin());
  if (unit.empty()) return {v, UnitDim::dimensionless};
  const auto& table = unit_table();
  const auto it = table.find(unit);
  if (it == table.end()) {
    throw std::invalid_argument("unknown unit '" + unit + "' in '" + text + "'");
  }
  return {v * it->second.scale, it->second.dim};
}

double quantity_as(const std::string& text, UnitDim expected, const std::string& key) {
  const Quantity q = parse_quantity(text);
  if (q.dim != expected) {
    if (q.dim == UnitDim::dimensionless) {
      throw std::invalid_argument("config key '" + key + "' needs an explicit " +
                                  dim_name(expected) + " unit, got '" + text + "'");
    }
    throw std::invalid_argument("config key '" + key + "' expects " +
                                dim_name(expected) + ", got " + dim_name(q.dim) +
                                " in '" + text + "'");
  }
  return q.value_si;
}

}  // namespace goldilocks::cli
