#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace goldilocks::cli {

struct ValidateSettings {
  std::uint64_t seed = 12345;
  long n_mc = 200000;
  long n_random = 1000;
  int threads = 1;
  std::string tamper = "none";  // fault injection for the test suite
};

struct ValidateCheck {
  std::string name;
  bool pass = false;
  double max_dev = 0.0;
  double threshold = 0.0;
};

struct ValidateReport {
  ValidateSettings settings;
  std::vector<ValidateCheck> checks;
  bool all_pass = true;
};

/// Cross-method and algebraic-identity suite. Deterministic given the
/// settings: same seed, byte-identical report.
ValidateReport run_validation(const ValidateSettings& settings);

std::string render_text(const ValidateReport& report);
nlohmann::json render_json(const ValidateReport& report);

}  // namespace goldilocks::cli
