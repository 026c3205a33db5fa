#pragma once

#include <map>
#include <string>
#include <vector>

#include "cli/units.hpp"

namespace goldilocks::cli {

/// Key/value run configuration: a flat `key = value` text file with
/// `#` comments, unit-suffixed values and log/lin/list grid
/// expressions. Unknown keys are rejected against the per-command
/// schema. Precedence: defaults < file < GOLDILOCKS_* environment
/// overrides < command-line flags.
class Config {
 public:
  static Config load(const std::string& path, std::vector<std::string> allowed_keys);

  void set(const std::string& key, const std::string& value);  // flag override
  bool has(const std::string& key) const;

  double number(const std::string& key, double def) const;
  long integer(const std::string& key, long def) const;
  std::string word(const std::string& key, const std::string& def) const;

  /// Dimensioned scalar; `def` is parsed like a config value and must
  /// carry its unit too.
  double quantity(const std::string& key, UnitDim dim, const std::string& def) const;

  /// Grid/list value: "log(a, b, n) [unit]", "lin(a, b, n) [unit]" or
  /// "v1, v2, ... [unit]". Returns SI values.
  std::vector<double> grid(const std::string& key, UnitDim dim,
                           const std::string& def) const;

 private:
  void check_allowed(const std::string& key) const;

  std::vector<std::string> allowed_;
  std::map<std::string, std::string> kv_;
};

std::vector<double> parse_grid_text(const std::string& text, UnitDim dim,
                                    const std::string& key);

}  // namespace goldilocks::cli
