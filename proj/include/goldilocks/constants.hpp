#pragma once

// Physical constants, frozen at CODATA-2018 values (SI).
// https://physics.nist.gov/cuu/Constants/ (2018 adjustment)

namespace goldilocks::constants {

// speed of light in vacuum [m/s], exact (SI definition)
inline constexpr double c = 299792458.0;

// elementary charge [C], exact (2019 SI redefinition)
inline constexpr double e = 1.602176634e-19;

// Boltzmann constant [J/K], exact (2019 SI redefinition)
inline constexpr double k_B = 1.380649e-23;

// reduced Planck constant [J s], h/2pi with h exact
inline constexpr double hbar = 1.054571817e-34;

// vacuum electric permittivity [F/m], CODATA-2018 (u = 1.5e-10 relative)
inline constexpr double epsilon_0 = 8.8541878128e-12;

// classical electron radius [m], CODATA-2018
inline constexpr double r_e = 2.8179403262e-15;

}  // namespace goldilocks::constants
