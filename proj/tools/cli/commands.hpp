#pragma once

#include <map>
#include <string>

namespace goldilocks::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoOptimum = 2;
inline constexpr int kExitConvergence = 3;

struct CliOptions {
  std::string config_path;                       // --config
  std::map<std::string, std::string> overrides;  // flag values, applied last
};

int cmd_curve(const CliOptions& opts);
int cmd_signal_map(const CliOptions& opts);
int cmd_photon_eff(const CliOptions& opts);
int cmd_ion(const CliOptions& opts);
int cmd_optimize(const CliOptions& opts);
int cmd_validate(const CliOptions& opts);

}  // namespace goldilocks::cli
