#pragma once

#include <Eigen/Core>

#include "goldilocks/kernels.hpp"

namespace goldilocks {

enum class EnvironmentMode { directional, isotropic };

AngularShape to_shape(EnvironmentMode mode);

/// Rayleigh coupling convention for the dielectric contrast factor:
/// |(eps-1)/(eps+1)|^2 (default) or the Clausius-Mossotti form
/// |(eps-1)/(eps+2)|^2.
enum class RayleighForm { eps_plus_one, clausius_mossotti };

/// Differential cross-section family |f|^2 = g q^j (1+cos^2 theta')/2
/// with the couplings of the supported models folded into g.
struct CrossSectionModel {
  enum class Kind { powerlaw, thompson, rayleigh, rutherford };

  Kind kind = Kind::powerlaw;
  double g = 0.0;  // m^(2+j), so that g q^j is an area
  int j = 0;

  // model-specific parameters (SI), kept for reporting
  double radius = 0.0;       // sphere radius [m]
  double epsilon = 0.0;      // dielectric constant
  RayleighForm rayleigh_form = RayleighForm::eps_plus_one;
  int Z = 0, Zp = 0;         // charge numbers
  double temperature = 0.0;  // thermal source temperature [K]
  double mass = 0.0;         // projectile mass [kg]

  static CrossSectionModel power_law(double g, int j);
  static CrossSectionModel thompson();  // j = 0, g = r_e^2
  static CrossSectionModel rayleigh(double radius_m, double eps,
                                    RayleighForm form = RayleighForm::eps_plus_one);
  // Ion scattering at the thermal wavenumber, mapped onto the family
  // as j = 0 with g the thermal prefactor (see rutherford_prefactor).
  static CrossSectionModel rutherford(int Z, int Zp, double temperature_K,
                                      double mass_kg);
};

/// Incoming particle beam along +z: either a definite wavenumber q0
/// with flux density n*v, or a tabulated per-wavenumber flux density.
struct BeamSpec {
  enum class Kind { monochromatic, tabulated };

  Kind kind = Kind::monochromatic;
  double q0 = 0.0;            // [1/m]
  double flux_density = 0.0;  // n*v [1/(m^2 s)]
  Eigen::ArrayX2d table;      // col 0: q [1/m] ascending, col 1: n(q)v(q) [1/(m s)]

  static BeamSpec monochromatic(double q0, double flux_density);
  static BeamSpec tabulated(Eigen::ArrayX2d table);

  double wavelength() const;  // 2 pi / q0
};

/// Localization rate split into its decohering and phase-imprinting
/// parts: deco_rate = Re F, phase_rate = -Im F. The sign convention
/// makes phase_rate positive at small separations.
struct ComplexRate {
  double deco_rate = 0.0;   // 1/s
  double phase_rate = 0.0;  // rad/s
  double delta_x = 0.0;     // m
  double z = 0.0;           // q0 * delta_x (flux-weighted mean q for tables)
};

/// Prefactor of the dimensional rate: Int dq n(q) v(q) g q^j. [1/s]
double effective_flux(const BeamSpec& beam, const CrossSectionModel& xs);

/// Dimensional localization rate F(delta_x) = Phi_eff * F_ang(q0 dx)
/// for monochromatic beams; tabulated beams integrate the kernel over q.
ComplexRate localization_rate(const BeamSpec& beam, const CrossSectionModel& xs,
                              double delta_x, EnvironmentMode mode,
                              KernelMethod method = KernelMethod::closed_form,
                              double tol = 1e-10);

/// (Z Z' e^2 / (4 pi eps0 k_B T))^2: the ion cross-section coupling at
/// the thermal wavenumber k_B T/2 = hbar^2 q^2 / 2m. The mass cancels;
/// it is validated but unused. [m^2]
double rutherford_prefactor(int Z, int Zp, double temperature_K, double mass_kg);

/// Effective interaction rate flux * prefactor for a Z = 1 ion. The
/// saturated angular weight 2/3 enters through the kernel, not here. [1/s]
double ion_detection_rate(int Zp, double temperature_K, double mass_kg,
                          double flux_density);

/// Thermal wavenumber from k_B T/2 = hbar^2 q^2 / 2m. [1/m]
double thermal_wavenumber(double temperature_K, double mass_kg);

// Derived conveniences: the curvature of the decoherence rate at zero
// separation and its large-separation saturation value.
double long_wavelength_curvature(const BeamSpec& beam, const CrossSectionModel& xs);
double short_wavelength_rate(const BeamSpec& beam, const CrossSectionModel& xs);

}  // namespace goldilocks
