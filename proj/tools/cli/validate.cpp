#include "cli/validate.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "goldilocks/bessel.hpp"
#include "goldilocks/interferometer.hpp"
#include "goldilocks/montecarlo.hpp"

namespace goldilocks::cli {

namespace {

double unit_double(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

ValidateCheck check(const std::string& name, double max_dev, double threshold) {
  return {name, max_dev <= threshold, max_dev, threshold};
}

ValidateCheck small_z_law(const std::string& tamper) {
  const double zs[3] = {1e-3, 3e-3, 1e-2};
  double szi = 0.0, sz2 = 0.0, szr = 0.0, sz4 = 0.0;
  for (const double z : zs) {
    const auto k = closed_form_kernel(z);
    szi += z * k.value.imag();
    sz2 += z * z;
    szr += z * z * k.value.real();
    sz4 += z * z * z * z;
  }
  const double c_im = szi / sz2;
  const double c_re = szr / sz4;
  double re_ref = kSmallZCoeff2;
  if (tamper == "small_z_re_coeff") re_ref *= 1.03;
  const double dev = std::max(std::abs(c_im / kSmallZCoeff1.imag() - 1.0),
                              std::abs(c_re / re_ref - 1.0));
  return check("small_z_law", dev, 5e-3);
}

ValidateCheck large_z_law() {
  const auto k = closed_form_kernel(1e3);
  const double dev =
      std::max(std::abs(k.value.real() - 2.0 / 3.0), std::abs(k.value.imag()));
  return check("large_z_law", dev, 1e-2);
}

ValidateCheck cross_method(const std::string& name, KernelMethod method) {
  double dev = 0.0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const double z = 1e-2 * std::pow(50.0 / 1e-2, static_cast<double>(i) / (n - 1));
    const auto a = closed_form_kernel(z);
    const auto b = method == KernelMethod::quadrature ? quadrature_kernel(z, 1e-10)
                                                      : series_kernel(z, 1e-10);
    dev = std::max(dev, std::abs(a.value - b.value));
  }
  return check(name, dev, 1e-8);
}

ValidateCheck taylor_small_z() {
  const double z = 0.1;
  const auto t2 = taylor_kernel(z, 2);
  const auto cf = closed_form_kernel(z);
  const double dev = std::abs(t2.value - cf.value);
  return check("taylor_small_z", dev, std::abs(kSmallZCoeff3) * z * z * z * 1.5);
}

ValidateCheck isotropic_im() {
  double dev = 0.0;
  for (const double z : {0.5, 2.0, 5.0, 20.0}) {
    dev = std::max(dev, std::abs(isotropic_kernel(z, 1e-10).value.imag()));
  }
  return check("isotropic_im_zero", dev, 1e-10);
}

ValidateCheck asymptotic_consistency() {
  const auto lim = asymptotic_limits(AngularShape::isotropic_powerlaw);
  const auto iso = isotropic_kernel(1e3, 1e-10);
  const double dev = std::abs(iso.value.real() - lim.re);
  return check("asymptotic_consistency", dev, 1e-4);
}

ValidateCheck mc_directional(const ValidateSettings& s) {
  double dev = 0.0;
  for (const double z : {0.5, 2.0, 10.0}) {
    const auto mc = mc_kernel(z, EnvironmentMode::directional, s.n_mc, s.seed, s.threads);
    const auto cf = closed_form_kernel(z);
    dev = std::max(dev, std::abs(mc.mean.real() - cf.value.real()) / mc.stderr_re);
    dev = std::max(dev, std::abs(mc.mean.imag() - cf.value.imag()) / mc.stderr_im);
  }
  return check("mc_directional_4sigma", dev, 4.0);
}

ValidateCheck mc_isotropic(const ValidateSettings& s) {
  const auto mc = mc_kernel(5.0, EnvironmentMode::isotropic, s.n_mc, s.seed, s.threads);
  const double dev = std::abs(mc.mean.imag()) / mc.stderr_im;
  return check("mc_isotropic_im_4sigma", dev, 4.0);
}

ValidateCheck gate_identities(const ValidateSettings& s) {
  std::mt19937_64 eng(s.seed ^ 0x9e3779b97f4a7c15ull);
  double dev = 0.0;
  for (long i = 0; i < s.n_random; ++i) {
    const double a = 0.05 + 1.9 * unit_double(eng);
    const double b = 2.0 - a;
    const double A = unit_double(eng) * std::sqrt(a * b);
    const double phi = 2.0 * std::numbers::pi * unit_double(eng);
    const SpinState rho = SpinState::coherence(a, b, A, phi);
    const SpinState rho_f = apply_readout_gates(rho);
    const double d11 = 0.25 * (a + b + 2.0 * A * std::sin(phi));
    const double d22 = 0.25 * (a + b - 2.0 * A * std::sin(phi));
    dev = std::max(dev, std::abs(rho_f.rho(0, 0).real() - d11));
    dev = std::max(dev, std::abs(rho_f.rho(1, 1).real() - d22));
    dev = std::max(dev, std::abs(signal(rho_f) - 2.0 * rho.rho(0, 1).imag()));
  }
  return check("gate_identities", dev, 1e-12);
}

ValidateCheck efficiency_bounds(const ValidateSettings& s) {
  std::mt19937_64 eng(s.seed ^ 0xbf58476d1ce4e5b9ull);
  double dev = 0.0;
  for (long i = 0; i < 10000; ++i) {
    ComplexRate rate;
    rate.deco_rate = 10.0 * unit_double(eng);
    rate.phase_rate = 40.0 * (unit_double(eng) - 0.5);
    const double t = 10.0 * unit_double(eng);
    const double eta = efficiency(rate, t);
    dev = std::max(dev, std::max(-eta, eta - 1.0));
  }
  ComplexRate flip;
  flip.deco_rate = 0.0;
  flip.phase_rate = std::numbers::pi / 0.7;
  dev = std::max(dev, std::abs(efficiency(flip, 0.7) - 1.0));
  return check("efficiency_bounds", dev, 1e-12);
}

ValidateCheck bessel_recurrence(const ValidateSettings& s) {
  std::mt19937_64 eng(s.seed ^ 0x94d049bb133111ebull);
  double dev = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(unit_double(eng) * 80.0);
    const double x = 1e-2 + unit_double(eng) * 60.0;
    const double lhs = bessel_jn(n - 1, x) + bessel_jn(n + 1, x);
    const double rhs = (2.0 * n / x) * bessel_jn(n, x);
    dev = std::max(dev, std::abs(lhs - rhs));
  }
  return check("bessel_recurrence", dev, 1e-9);
}

ValidateCheck sampler_moments(const ValidateSettings& s) {
  const long n = std::max<long>(s.n_mc, 100000);
  const auto rep = sampler_selftest(n, s.seed);
  const double dev = std::max(std::abs(rep.mean_u - rep.analytic_u) / rep.sigma_u,
                              std::abs(rep.mean_u2 - rep.analytic_u2) / rep.sigma_u2);
  return check("sampler_moments_5sigma", dev, 5.0);
}

}  // namespace

ValidateReport run_validation(const ValidateSettings& settings) {
  if (settings.tamper != "none" && settings.tamper != "small_z_re_coeff") {
    throw std::invalid_argument("unknown tamper target '" + settings.tamper + "'");
  }
  if (settings.n_mc < 1000) {
    throw std::invalid_argument("n_mc must be >= 1000");
  }
  if (settings.n_random < 1) {
    throw std::invalid_argument("n_random must be >= 1");
  }
  ValidateReport rep;
  rep.settings = settings;
  rep.checks.push_back(small_z_law(settings.tamper));
  rep.checks.push_back(large_z_law());
  rep.checks.push_back(cross_method("cross_method_quadrature", KernelMethod::quadrature));
  rep.checks.push_back(cross_method("cross_method_series", KernelMethod::jacobi_anger));
  rep.checks.push_back(taylor_small_z());
  rep.checks.push_back(isotropic_im());
  rep.checks.push_back(asymptotic_consistency());
  rep.checks.push_back(mc_directional(settings));
  rep.checks.push_back(mc_isotropic(settings));
  rep.checks.push_back(gate_identities(settings));
  rep.checks.push_back(efficiency_bounds(settings));
  rep.checks.push_back(bessel_recurrence(settings));
  rep.checks.push_back(sampler_moments(settings));
  for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

std::string render_text(const ValidateReport& report) {
  std::string out = "goldilocks validate v1\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "seed=%llu n_mc=%ld n_random=%ld\n",
                static_cast<unsigned long long>(report.settings.seed),
                report.settings.n_mc, report.settings.n_random);
  out += buf;
  int n_pass = 0;
  for (const auto& c : report.checks) {
    std::snprintf(buf, sizeof(buf), "%s %-26s max_dev=%.6e threshold=%.1e\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.max_dev, c.threshold);
    out += buf;
    n_pass += c.pass ? 1 : 0;
  }
  std::snprintf(buf, sizeof(buf), "RESULT %s %d/%zu\n",
                report.all_pass ? "PASS" : "FAIL", n_pass, report.checks.size());
  out += buf;
  return out;
}

nlohmann::json render_json(const ValidateReport& report) {
  nlohmann::json j;
  j["version"] = "goldilocks validate v1";
  j["seed"] = report.settings.seed;
  j["n_mc"] = report.settings.n_mc;
  j["n_random"] = report.settings.n_random;
  j["pass"] = report.all_pass;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"max_dev", c.max_dev},
                           {"threshold", c.threshold}});
  }
  return j;
}

}  // namespace goldilocks::cli
