#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "cli/svg.hpp"
#include "cli/validate.hpp"
#include "goldilocks/interferometer.hpp"
#include "goldilocks/montecarlo.hpp"

namespace goldilocks::cli {

namespace {

using nlohmann::json;

Config load_config(const CliOptions& opts, std::vector<std::string> allowed) {
  Config cfg = Config::load(opts.config_path, std::move(allowed));
  for (const auto& [key, value] : opts.overrides) cfg.set(key, value);
  return cfg;
}

KernelMethod parse_method(const std::string& word) {
  if (word == "closed_form") return KernelMethod::closed_form;
  if (word == "quadrature") return KernelMethod::quadrature;
  if (word == "jacobi_anger") return KernelMethod::jacobi_anger;
  if (word == "taylor") return KernelMethod::taylor;
  if (word == "asymptotic") return KernelMethod::asymptotic;
  throw std::invalid_argument("unknown method '" + word + "'");
}

const char* method_name(KernelMethod m) {
  switch (m) {
    case KernelMethod::closed_form: return "closed_form";
    case KernelMethod::quadrature: return "quadrature";
    case KernelMethod::jacobi_anger: return "jacobi_anger";
    case KernelMethod::taylor: return "taylor";
    case KernelMethod::asymptotic: return "asymptotic";
  }
  return "?";
}

EnvironmentMode parse_mode(const std::string& word) {
  if (word == "directional") return EnvironmentMode::directional;
  if (word == "isotropic") return EnvironmentMode::isotropic;
  throw std::invalid_argument("unknown mode '" + word + "'");
}

const char* mode_name(EnvironmentMode m) {
  return m == EnvironmentMode::directional ? "directional" : "isotropic";
}

int read_threads(const Config& cfg) {
  const long t = cfg.integer("threads", 1);
  if (t < 1 || t > 64) {
    throw std::invalid_argument("threads must lie in [1, 64]");
  }
  return static_cast<int>(t);
}

CrossSectionModel cross_section_from(const Config& cfg) {
  const std::string kind = cfg.word("cross_section", "powerlaw");
  if (kind == "powerlaw") {
    return CrossSectionModel::power_law(cfg.number("g_si", 1.0),
                                        static_cast<int>(cfg.integer("j", 0)));
  }
  if (kind == "thompson") return CrossSectionModel::thompson();
  if (kind == "rayleigh") {
    const std::string form = cfg.word("rayleigh_form", "eps_plus_one");
    if (form != "eps_plus_one" && form != "clausius_mossotti") {
      throw std::invalid_argument("unknown rayleigh_form '" + form + "'");
    }
    return CrossSectionModel::rayleigh(
        cfg.quantity("radius", UnitDim::length, "50 nm"),
        cfg.number("epsilon", 2.1),
        form == "eps_plus_one" ? RayleighForm::eps_plus_one
                               : RayleighForm::clausius_mossotti);
  }
  if (kind == "rutherford") {
    return CrossSectionModel::rutherford(
        static_cast<int>(cfg.integer("Z", 1)), static_cast<int>(cfg.integer("Zp", 1)),
        cfg.quantity("temperature", UnitDim::temperature, "100 K"),
        cfg.quantity("mass", UnitDim::mass, "1e-25 kg"));
  }
  throw std::invalid_argument("unknown cross_section '" + kind + "'");
}

// Beam with flux chosen so the effective flux equals `flux_eff`
// (the unit-normalized prefactor used for the kernel-level figures).
BeamSpec normalized_beam(double lambda, const CrossSectionModel& xs, double flux_eff) {
  const double q0 = 2.0 * std::numbers::pi / lambda;
  const double nv = flux_eff / (xs.g * std::pow(q0, xs.j));
  return BeamSpec::monochromatic(q0, nv);
}

template <class Fn>
void parallel_over(std::size_t count, int threads, const Fn& fn) {
  const int n_workers = std::clamp<int>(threads, 1, 64);
  if (n_workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < count;
           i += static_cast<std::size_t>(n_workers)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

void write_json(const std::string& path, const json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open output file '" + path + "'");
  }
  out << j.dump(2) << "\n";
}

}  // namespace

int cmd_curve(const CliOptions& opts) {
  const Config cfg = load_config(
      opts, {"dx_over_lambda", "mode", "method", "tol", "out", "svg", "seed", "threads"});
  const std::vector<double> grid =
      cfg.grid("dx_over_lambda", UnitDim::dimensionless, "log(1e-3, 1e2, 400)");
  const std::string mode_word = cfg.word("mode", "directional");
  std::vector<EnvironmentMode> modes;
  if (mode_word == "both") {
    modes = {EnvironmentMode::directional, EnvironmentMode::isotropic};
  } else {
    modes = {parse_mode(mode_word)};
  }
  const KernelMethod method = parse_method(cfg.word("method", "closed_form"));
  const double tol = cfg.number("tol", 1e-10);
  const int threads = read_threads(cfg);

  struct Row {
    double dxol = 0.0, z = 0.0;
    KernelResult kr;
    bool failed = false;
  };
  std::vector<std::vector<Row>> per_mode(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m) {
    auto& rows = per_mode[m];
    rows.resize(grid.size());
    const AngularShape shape = to_shape(modes[m]);
    parallel_over(grid.size(), threads, [&](std::size_t i) {
      Row& r = rows[i];
      r.dxol = grid[i];
      r.z = 2.0 * std::numbers::pi * grid[i];
      try {
        r.kr = evaluate_kernel(r.z, shape, method, tol);
      } catch (const ConvergenceError& e) {
        r.kr = e.best_estimate();
        r.failed = true;
      }
    });
  }

  CsvWriter csv(cfg.word("out", "curve.csv"));
  csv.comment("goldilocks curve v1");
  csv.row({"dx_over_lambda", "z", "mode", "re_kernel", "im_kernel", "method",
           "err_estimate", "status"});
  bool any_failed = false;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    for (const Row& r : per_mode[m]) {
      any_failed = any_failed || r.failed;
      csv.row({num17(r.dxol), num17(r.z), mode_name(modes[m]),
               num17(r.kr.value.real()), num17(r.kr.value.imag()),
               method_name(r.kr.method), num17(r.kr.abs_error_estimate),
               r.failed ? "convergence_error" : "ok"});
    }
  }

  if (cfg.has("svg") && !grid.empty() && grid.front() > 0.0) {
    std::vector<CurveSeries> series;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      CurveSeries re{std::string("Re ") + mode_name(modes[m]), "#1f77b4", {}};
      CurveSeries im{std::string("Im ") + mode_name(modes[m]), "#ff7f0e", {}};
      if (m == 1) {
        re.color = "#2ca02c";
        im.color = "#d62728";
      }
      for (const Row& r : per_mode[m]) {
        re.y.push_back(r.kr.value.real());
        im.y.push_back(r.kr.value.imag());
      }
      series.push_back(std::move(re));
      series.push_back(std::move(im));
    }
    write_curve_svg(cfg.word("svg", ""), grid, series, "dx/lambda", "angular kernel");
  }
  return any_failed ? kExitConvergence : kExitOk;
}

int cmd_signal_map(const CliOptions& opts) {
  const Config cfg = load_config(
      opts, {"dx_over_lambda", "t_grid", "lambda", "flux_eff", "mode", "method", "tol",
             "phase_model", "out", "svg", "seed", "threads"});
  const std::vector<double> dx_grid =
      cfg.grid("dx_over_lambda", UnitDim::dimensionless, "log(1e-2, 10, 120)");
  const std::vector<double> t_grid = cfg.grid("t_grid", UnitDim::time, "lin(0, 5, 51) s");
  const double lambda = cfg.quantity("lambda", UnitDim::length, "1064 nm");
  const double flux_eff = cfg.quantity("flux_eff", UnitDim::rate, "1 1/s");
  const EnvironmentMode mode = parse_mode(cfg.word("mode", "directional"));
  const KernelMethod method = parse_method(cfg.word("method", "closed_form"));
  const double tol = cfg.number("tol", 1e-10);
  const int threads = read_threads(cfg);
  const std::string phase_word = cfg.word("phase_model", "kernel");
  if (phase_word != "kernel" && phase_word != "geometric") {
    throw std::invalid_argument("phase_model must be 'kernel' or 'geometric'");
  }
  const PhaseModel phase_model =
      phase_word == "kernel" ? PhaseModel::kernel_rate : PhaseModel::geometric;

  const CrossSectionModel xs = CrossSectionModel::power_law(1.0, 0);
  const BeamSpec beam = normalized_beam(lambda, xs, flux_eff);

  struct Row {
    double A = 1.0, phi_rate = 0.0;
  };
  std::vector<ComplexRate> rates(dx_grid.size());
  parallel_over(dx_grid.size(), threads, [&](std::size_t i) {
    rates[i] = localization_rate(beam, xs, dx_grid[i] * lambda, mode, method, tol);
  });

  Eigen::MatrixXd values(dx_grid.size(), t_grid.size());
  CsvWriter csv(cfg.word("out", "signal_map.csv"));
  csv.comment("goldilocks signal-map v1");
  csv.row({"dx_over_lambda", "t_s", "A", "phi", "signal"});
  for (std::size_t i = 0; i < dx_grid.size(); ++i) {
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
      const VisibilityPhase vp = VisibilityPhase::from_rate(rates[i], t_grid[j]);
      const double phi = phase_model == PhaseModel::kernel_rate
                             ? vp.phi
                             : 2.0 * std::numbers::pi * dx_grid[i];
      const double s = vp.A * std::sin(phi);
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
      csv.row({num17(dx_grid[i]), num17(t_grid[j]), num17(vp.A), num17(phi), num17(s)});
    }
  }

  if (cfg.has("svg")) {
    write_heatmap_svg(cfg.word("svg", ""), dx_grid, t_grid, values, "dx/lambda",
                      "t [s]", "signal A sin(phi)");
  }
  return kExitOk;
}

int cmd_photon_eff(const CliOptions& opts) {
  const Config cfg = load_config(
      opts, {"dx_over_lambda", "lambda", "radius", "epsilon", "rayleigh_form",
             "ap_list", "photons_per_ap", "t", "mode", "method", "tol", "out", "seed",
             "threads"});
  const std::vector<double> dx_grid =
      cfg.grid("dx_over_lambda", UnitDim::dimensionless, "log(1e-3, 10, 400)");
  const std::vector<double> ap_list =
      cfg.grid("ap_list", UnitDim::area, "1e-12, 1e-13, 1e-14 m^2");
  const double lambda = cfg.quantity("lambda", UnitDim::length, "1064 nm");
  const double t = cfg.quantity("t", UnitDim::time, "1 s");
  const double photons_per_ap = cfg.number("photons_per_ap", 1e6);
  const EnvironmentMode mode = parse_mode(cfg.word("mode", "directional"));
  const KernelMethod method = parse_method(cfg.word("method", "closed_form"));
  const double tol = cfg.number("tol", 1e-10);
  const int threads = read_threads(cfg);
  const std::string form = cfg.word("rayleigh_form", "eps_plus_one");
  if (form != "eps_plus_one" && form != "clausius_mossotti") {
    throw std::invalid_argument("unknown rayleigh_form '" + form + "'");
  }

  const CrossSectionModel xs = CrossSectionModel::rayleigh(
      cfg.quantity("radius", UnitDim::length, "50 nm"), cfg.number("epsilon", 2.1),
      form == "eps_plus_one" ? RayleighForm::eps_plus_one
                             : RayleighForm::clausius_mossotti);
  const double q0 = 2.0 * std::numbers::pi / lambda;

  CsvWriter csv(cfg.word("out", "photon_eff.csv"));
  csv.comment("goldilocks photon-eff v1");
  csv.row({"dx_over_lambda", "A_p_m2", "eta"});
  for (const double ap : ap_list) {
    if (!(ap > 0.0)) {
      throw std::invalid_argument("ap_list entries must be positive");
    }
    // transverse photon area maps to a flux density n v = photons/(A_p s)
    const BeamSpec beam = BeamSpec::monochromatic(q0, photons_per_ap / ap);
    std::vector<double> eta(dx_grid.size());
    parallel_over(dx_grid.size(), threads, [&](std::size_t i) {
      const ComplexRate rate =
          localization_rate(beam, xs, dx_grid[i] * lambda, mode, method, tol);
      eta[i] = efficiency(rate, t);
    });
    for (std::size_t i = 0; i < dx_grid.size(); ++i) {
      csv.row({num17(dx_grid[i]), num17(ap), num17(eta[i])});
    }
  }
  return kExitOk;
}

int cmd_ion(const CliOptions& opts) {
  const Config cfg = load_config(
      opts, {"temperature", "mass", "Z", "Zp", "flux_density", "out", "seed", "threads"});
  const double temperature = cfg.quantity("temperature", UnitDim::temperature, "100 K");
  const double mass = cfg.quantity("mass", UnitDim::mass, "1e-25 kg");
  const int Z = static_cast<int>(cfg.integer("Z", 1));
  const int Zp = static_cast<int>(cfg.integer("Zp", 1));
  const double flux =
      cfg.quantity("flux_density", UnitDim::flux_density, "1e14 1/(m^2 s)");

  const double prefactor = rutherford_prefactor(Z, Zp, temperature, mass);
  const double rate = flux * prefactor;
  const double q_thermal = thermal_wavenumber(temperature, mass);
  const double lambda_thermal = 2.0 * std::numbers::pi / q_thermal;

  // separation maximizing the phase imparted per scattering event
  const CrossSectionModel xs = CrossSectionModel::rutherford(Z, Zp, temperature, mass);
  const BeamSpec beam = BeamSpec::monochromatic(q_thermal, flux);
  const GoldilocksResult opt =
      goldilocks_search(beam, xs, EnvironmentMode::directional, 1.0,
                        GoldilocksCriterion::max_abs_im_kernel());

  json j;
  j["inputs"] = {{"Z", Z},
                 {"Zp", Zp},
                 {"temperature_K", temperature},
                 {"mass_kg", mass},
                 {"flux_density_per_m2_s", flux}};
  j["prefactor_m2"] = prefactor;
  j["detection_rate_per_s"] = rate;
  j["thermal_wavenumber_per_m"] = q_thermal;
  j["thermal_wavelength_m"] = lambda_thermal;
  j["optimal"] = {{"z_star", opt.z_star},
                  {"dx_star_m", opt.z_star / q_thermal},
                  {"dx_star_over_lambda",
                   opt.z_star / (2.0 * std::numbers::pi)}};
  write_json(cfg.word("out", "-"), j);
  return kExitOk;
}

int cmd_optimize(const CliOptions& opts) {
  const Config cfg = load_config(
      opts, {"criterion", "s0", "t", "mode", "lambda", "cross_section", "j", "g_si",
             "radius", "epsilon", "rayleigh_form", "temperature", "mass", "Z", "Zp",
             "flux_eff", "z_lo", "z_hi", "out", "seed", "threads"});
  const std::string crit_word = cfg.word("criterion", "max_abs_im_kernel");
  const double s0 = cfg.number("s0", 0.95);
  const double t = cfg.quantity("t", UnitDim::time, "1 s");
  const EnvironmentMode mode = parse_mode(cfg.word("mode", "directional"));
  const double lambda = cfg.quantity("lambda", UnitDim::length, "1064 nm");
  const double flux_eff = cfg.quantity("flux_eff", UnitDim::rate, "1 1/s");
  const double z_lo = cfg.number("z_lo", 1e-3);
  const double z_hi = cfg.number("z_hi", 1e2);

  GoldilocksCriterion criterion;
  if (crit_word == "max_abs_im_kernel") {
    criterion = GoldilocksCriterion::max_abs_im_kernel();
    criterion.s0 = s0;
  } else if (crit_word == "signal_threshold") {
    criterion = GoldilocksCriterion::signal_threshold(s0);
  } else {
    throw std::invalid_argument("unknown criterion '" + crit_word + "'");
  }

  const CrossSectionModel xs = cross_section_from(cfg);
  const BeamSpec beam = normalized_beam(lambda, xs, flux_eff);

  json j;
  j["inputs"] = {{"criterion", crit_word}, {"s0", s0},       {"t_s", t},
                 {"mode", mode_name(mode)}, {"lambda_m", lambda},
                 {"flux_eff_per_s", flux_eff}, {"j", xs.j}};
  const std::string out = cfg.word("out", "-");
  try {
    const GoldilocksResult res =
        goldilocks_search(beam, xs, mode, t, criterion, z_lo, z_hi);
    const double two_pi = 2.0 * std::numbers::pi;
    j["z_star"] = res.z_star;
    j["dx_star_over_lambda"] = res.z_star / two_pi;
    j["dx_star_m"] = res.z_star / two_pi * lambda;
    j["criterion_at_star"] = res.criterion_at_star;
    j["window"] = {{"z_lo", res.window_lo},
                   {"z_hi", res.window_hi},
                   {"dx_over_lambda_lo", res.window_lo / two_pi},
                   {"dx_over_lambda_hi", res.window_hi / two_pi}};
    write_json(out, j);
    return kExitOk;
  } catch (const NoOptimumError& e) {
    j["error"] = {{"code", "no_optimum"}, {"message", e.what()}};
    write_json(out, j);
    return kExitNoOptimum;
  }
}

int cmd_validate(const CliOptions& opts) {
  const Config cfg = load_config(
      opts, {"seed", "n_mc", "n_random", "format", "tamper", "out", "threads"});
  ValidateSettings settings;
  settings.seed = static_cast<std::uint64_t>(cfg.integer("seed", 12345));
  settings.n_mc = cfg.integer("n_mc", 200000);
  settings.n_random = cfg.integer("n_random", 1000);
  settings.threads = read_threads(cfg);
  settings.tamper = cfg.word("tamper", "none");
  const std::string format = cfg.word("format", "text");
  if (format != "text" && format != "json") {
    throw std::invalid_argument("format must be 'text' or 'json'");
  }

  const ValidateReport report = run_validation(settings);
  const std::string out = cfg.word("out", "-");
  if (format == "text") {
    const std::string text = render_text(report);
    if (out == "-") {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw std::invalid_argument("cannot open output file '" + out + "'");
      f << text;
    }
  } else {
    write_json(out, render_json(report));
  }
  return report.all_pass ? kExitOk : kExitConvergence;
}

}  // namespace goldilocks::cli
