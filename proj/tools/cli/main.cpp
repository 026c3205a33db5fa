#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "goldilocks/interferometer.hpp"

namespace {

using goldilocks::cli::CliOptions;

void add_common_flags(CLI::App* sub, CliOptions& opts,
                      std::map<std::string, std::string>& flags) {
  sub->add_option("--config", opts.config_path, "config file (key = value lines)");
  sub->add_option("--out", flags["out"], "output path ('-' for stdout)");
  sub->add_option("--method", flags["method"],
                  "kernel method: closed_form|quadrature|jacobi_anger|taylor|asymptotic");
  sub->add_option("--mode", flags["mode"], "environment: directional|isotropic");
  sub->add_option("--seed", flags["seed"], "PRNG seed");
  sub->add_option("--threads", flags["threads"], "worker threads for sweeps");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"directional-scattering phase and decoherence calculator"};
  app.require_subcommand(1);

  struct Command {
    CLI::App* sub;
    CliOptions opts;
    std::map<std::string, std::string> flags;
    std::function<int(const CliOptions&)> run;
  };
  std::vector<Command> commands;
  commands.reserve(6);

  const auto add = [&](const char* name, const char* help,
                       int (*fn)(const CliOptions&)) {
    Command cmd;
    cmd.sub = app.add_subcommand(name, help);
    cmd.run = fn;
    commands.push_back(std::move(cmd));
    Command& back = commands.back();
    add_common_flags(back.sub, back.opts, back.flags);
  };

  add("curve", "angular kernel vs dx/lambda (CSV)", goldilocks::cli::cmd_curve);
  add("signal-map", "A sin(phi) over dx/lambda and t grids (CSV, optional SVG)",
      goldilocks::cli::cmd_signal_map);
  add("photon-eff", "click-detector efficiency for single photons (CSV)",
      goldilocks::cli::cmd_photon_eff);
  add("ion", "single-ion coupling and detection rate (JSON)",
      goldilocks::cli::cmd_ion);
  add("optimize", "locate the optimal superposition size (JSON)",
      goldilocks::cli::cmd_optimize);
  add("validate", "cross-method and identity suite (nonzero exit on failure)",
      goldilocks::cli::cmd_validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : goldilocks::cli::kExitUsage;
  }

  for (auto& cmd : commands) {
    if (!cmd.sub->parsed()) continue;
    try {
      for (const auto& [key, value] : cmd.flags) {
        if (!value.empty()) cmd.opts.overrides[key] = value;
      }
      return cmd.run(cmd.opts);
    } catch (const goldilocks::NoOptimumError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return goldilocks::cli::kExitNoOptimum;
    } catch (const goldilocks::ConvergenceError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return goldilocks::cli::kExitConvergence;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return goldilocks::cli::kExitUsage;
    }
  }
  return goldilocks::cli::kExitUsage;
}
