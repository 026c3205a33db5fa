#include "goldilocks/physics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "goldilocks/constants.hpp"

namespace goldilocks {

namespace {

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string(what) + " must be positive and finite");
  }
}

void check_table(const Eigen::ArrayX2d& table) {
  if (table.rows() == 0) {
    throw std::invalid_argument("beam table must not be empty");
  }
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    if (!(table(i, 0) > 0.0) || !std::isfinite(table(i, 0))) {
      throw std::invalid_argument("beam table: wavenumbers must be positive");
    }
    if (table(i, 1) < 0.0 || !std::isfinite(table(i, 1))) {
      throw std::invalid_argument("beam table: flux densities must be non-negative");
    }
    if (i > 0 && !(table(i, 0) > table(i - 1, 0))) {
      throw std::invalid_argument("beam table: wavenumbers must be strictly ascending");
    }
  }
}

// Trapezoidal integral of w(q) f(q) over the table grid.
template <class F>
double trapezoid(const Eigen::ArrayX2d& table, const F& f) {
  if (table.rows() == 1) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < table.rows(); ++i) {
    const double dq = table(i + 1, 0) - table(i, 0);
    acc += 0.5 * dq * (table(i, 1) * f(table(i, 0)) + table(i + 1, 1) * f(table(i + 1, 0)));
  }
  return acc;
}

template <class F>
std::complex<double> trapezoid_complex(const Eigen::ArrayX2d& table, const F& f) {
  if (table.rows() == 1) return {0.0, 0.0};
  std::complex<double> acc{0.0, 0.0};
  for (Eigen::Index i = 0; i + 1 < table.rows(); ++i) {
    const double dq = table(i + 1, 0) - table(i, 0);
    acc += 0.5 * dq *
           (table(i, 1) * f(table(i, 0)) + table(i + 1, 1) * f(table(i + 1, 0)));
  }
  return acc;
}

}  // namespace

AngularShape to_shape(EnvironmentMode mode) {
  return mode == EnvironmentMode::directional ? AngularShape::directional_powerlaw
                                              : AngularShape::isotropic_powerlaw;
}

CrossSectionModel CrossSectionModel::power_law(double g, int j) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("cross-section coupling g must be positive");
  }
  if (j < 0) {
    throw std::invalid_argument("cross-section exponent j must be >= 0");
  }
  CrossSectionModel m;
  m.kind = Kind::powerlaw;
  m.g = g;
  m.j = j;
  return m;
}

CrossSectionModel CrossSectionModel::thompson() {
  CrossSectionModel m = power_law(constants::r_e * constants::r_e, 0);
  m.kind = Kind::thompson;
  return m;
}

CrossSectionModel CrossSectionModel::rayleigh(double radius_m, double eps,
                                              RayleighForm form) {
  if (!(radius_m > 0.0) || !std::isfinite(radius_m)) {
    throw std::invalid_argument("rayleigh: radius must be positive");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("rayleigh: dielectric constant must be positive");
  }
  const double denom = form == RayleighForm::eps_plus_one ? eps + 1.0 : eps + 2.0;
  const double contrast = (eps - 1.0) / denom;
  const double g = std::pow(radius_m, 6) * contrast * contrast;
  CrossSectionModel m = power_law(g, 4);
  m.kind = Kind::rayleigh;
  m.radius = radius_m;
  m.epsilon = eps;
  m.rayleigh_form = form;
  return m;
}

CrossSectionModel CrossSectionModel::rutherford(int Z, int Zp, double temperature_K,
                                                double mass_kg) {
  CrossSectionModel m =
      power_law(rutherford_prefactor(Z, Zp, temperature_K, mass_kg), 0);
  m.kind = Kind::rutherford;
  m.Z = Z;
  m.Zp = Zp;
  m.temperature = temperature_K;
  m.mass = mass_kg;
  return m;
}

BeamSpec BeamSpec::monochromatic(double q0, double flux_density) {
  if (!(q0 > 0.0) || !std::isfinite(q0)) {
    throw std::invalid_argument("beam: q0 must be positive and finite");
  }
  if (flux_density < 0.0 || !std::isfinite(flux_density)) {
    throw std::invalid_argument("beam: flux density must be non-negative");
  }
  BeamSpec b;
  b.kind = Kind::monochromatic;
  b.q0 = q0;
  b.flux_density = flux_density;
  return b;
}

BeamSpec BeamSpec::tabulated(Eigen::ArrayX2d table) {
  check_table(table);
  BeamSpec b;
  b.kind = Kind::tabulated;
  b.table = std::move(table);
  // flux-weighted mean q stands in for q0 in reports
  const double total = trapezoid(b.table, [](double) { return 1.0; });
  const double qmean = total > 0.0
                           ? trapezoid(b.table, [](double q) { return q; }) / total
                           : b.table(b.table.rows() / 2, 0);
  b.q0 = qmean;
  b.flux_density = total;
  return b;
}

double BeamSpec::wavelength() const { return 2.0 * std::numbers::pi / q0; }

double effective_flux(const BeamSpec& beam, const CrossSectionModel& xs) {
  if (beam.kind == BeamSpec::Kind::monochromatic) {
    return beam.flux_density * xs.g * std::pow(beam.q0, xs.j);
  }
  return trapezoid(beam.table,
                   [&](double q) { return xs.g * std::pow(q, xs.j); });
}

ComplexRate localization_rate(const BeamSpec& beam, const CrossSectionModel& xs,
                              double delta_x, EnvironmentMode mode,
                              KernelMethod method, double tol) {
  if (delta_x < 0.0 || !std::isfinite(delta_x)) {
    throw std::domain_error("localization_rate: delta_x must be non-negative");
  }
  const AngularShape shape = to_shape(mode);
  ComplexRate rate;
  rate.delta_x = delta_x;
  rate.z = beam.q0 * delta_x;
  std::complex<double> f;
  if (beam.kind == BeamSpec::Kind::monochromatic) {
    const KernelResult k = evaluate_kernel(rate.z, shape, method, tol);
    f = effective_flux(beam, xs) * k.value;
  } else {
    f = trapezoid_complex(beam.table, [&](double q) {
      return xs.g * std::pow(q, xs.j) *
             evaluate_kernel(q * delta_x, shape, method, tol).value;
    });
  }
  rate.deco_rate = f.real();
  rate.phase_rate = -f.imag();
  return rate;
}

double rutherford_prefactor(int Z, int Zp, double temperature_K, double mass_kg) {
  check_positive(temperature_K, "rutherford: temperature");
  check_positive(mass_kg, "rutherford: mass");
  if (Z == 0 || Zp == 0) {
    throw std::invalid_argument("rutherford: charge numbers must be non-zero");
  }
  // m^2/(hbar^4 q^4) (Z Z' e^2)^2/(4 pi eps0)^2 at the thermal q,
  // q^2 = m k_B T / hbar^2; the mass cancels.
  const double coulomb = constants::e * constants::e /
                         (4.0 * std::numbers::pi * constants::epsilon_0);
  const double ratio =
      static_cast<double>(Z) * static_cast<double>(Zp) * coulomb /
      (constants::k_B * temperature_K);
  return ratio * ratio;
}

double ion_detection_rate(int Zp, double temperature_K, double mass_kg,
                          double flux_density) {
  if (flux_density < 0.0 || !std::isfinite(flux_density)) {
    throw std::domain_error("ion_detection_rate: flux density must be non-negative");
  }
  return flux_density * rutherford_prefactor(1, Zp, temperature_K, mass_kg);
}

double thermal_wavenumber(double temperature_K, double mass_kg) {
  check_positive(temperature_K, "thermal_wavenumber: temperature");
  check_positive(mass_kg, "thermal_wavenumber: mass");
  return std::sqrt(mass_kg * constants::k_B * temperature_K) / constants::hbar;
}

double long_wavelength_curvature(const BeamSpec& beam, const CrossSectionModel& xs) {
  const double c2 = 2.0 * kSmallZCoeff2;  // d^2/dz^2 of the quadratic rise
  if (beam.kind == BeamSpec::Kind::monochromatic) {
    return effective_flux(beam, xs) * c2 * beam.q0 * beam.q0;
  }
  return trapezoid(beam.table,
                   [&](double q) { return xs.g * std::pow(q, xs.j) * c2 * q * q; });
}

double short_wavelength_rate(const BeamSpec& beam, const CrossSectionModel& xs) {
  return effective_flux(beam, xs) * asymptotic_limits(AngularShape::directional_powerlaw).re;
}

}  // namespace goldilocks
