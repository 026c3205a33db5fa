#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace goldilocks {

enum class KernelMethod { closed_form, quadrature, jacobi_anger, taylor, asymptotic };

enum class AngularShape { directional_powerlaw, isotropic_powerlaw };

/// Dimensionless angular kernel value F(z), z = q * delta_x.
///
/// F(z) is the angular average of (1 - e^{i(q-q').dx}) against the
/// normalized (1+cos^2)/2 scattering weight. Re F drives decoherence,
/// -Im F drives the relative phase.
struct KernelResult {
  std::complex<double> value;
  double abs_error_estimate = 0.0;
  KernelMethod method = KernelMethod::closed_form;
  long terms_or_evals = 0;
};

struct AsymptoticLimits {
  double re = 0.0;
  double im = 0.0;
};

/// Thrown when an iterative evaluation fails to reach its tolerance.
/// Carries the best estimate obtained so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, KernelResult best)
      : std::runtime_error(msg), best_(best) {}
  const KernelResult& best_estimate() const { return best_; }

 private:
  KernelResult best_;
};

struct QuadratureOptions {
  int max_depth = 30;
  long max_segments = 500000;
};

// Below the switchover the trigonometric closed form cancels
// catastrophically (the 1/z^2 terms lose ~2*log10(1/z) digits), so the
// power-series branch takes over. 0.03 keeps the absolute error of both
// branches below 1e-12.
inline constexpr double kClosedFormSwitchover = 0.03;

// Coefficients of the small-z expansion F(z) = sum_{n>=1} c_n z^n, from
// the moments of the scattering weight over u = cos(theta'):
//   M_n = (1/4) Int_{-1}^{1} (1+u^2)(1-u)^n du
//       = 2^n [ 1/(n+1) - 2/(n+2) + 2/(n+3) ],
//   c_n = -(i)^n M_n / n!.
// M_1 = 2/3, M_2 = 14/15, M_3 = 22/15, M_4 = 256/105:
inline constexpr std::complex<double> kSmallZCoeff1{0.0, -2.0 / 3.0};
inline constexpr double kSmallZCoeff2 = 7.0 / 15.0;
inline constexpr std::complex<double> kSmallZCoeff3{0.0, 11.0 / 45.0};
inline constexpr double kSmallZCoeff4 = -32.0 / 315.0;

/// Analytically reduced directional kernel,
///   F(z) = 2/3 - e^{iz} (sin z / z + cos z / z^2 - sin z / z^3),
/// with the series branch below `switchover`. Absolute error <= 1e-12
/// at the default switchover.
KernelResult closed_form_kernel(double z, double switchover = kClosedFormSwitchover);

/// Adaptive Gauss-Kronrod quadrature of the u-integral on [-1, 1].
/// tol must lie in (1e-14, 1e-2). For z > 500 the interval is pre-split
/// into subintervals of length <~ pi/z to resolve the oscillation.
KernelResult quadrature_kernel(double z, double tol, const QuadratureOptions& opts = {});

/// Cylindrical-harmonic (Jacobi-Anger) expansion of the oscillatory
/// factor, each harmonic integrated against the angular weight
/// analytically. Truncates after three consecutive small terms.
KernelResult series_kernel(double z, double tol);

/// Small-z expansion up to the requested order (1..3); the error
/// estimate is the magnitude of the first neglected term.
KernelResult taylor_kernel(double z, int order);

/// Isotropic environment: double angular average over incoming and
/// outgoing directions of (1 - e^{i(q-q').dx}) (1+cos^2 Theta)/2. The
/// azimuthal averages are done analytically; the remaining factors
///   C(z) = Int_{-1}^{1} e^{izu} du,   D(z) = Int_{-1}^{1} u^2 e^{izu} du
/// are evaluated by adaptive quadrature and assembled as
///   F_iso(z) = 2/3 - (1/8)(C^2 + D^2) - (1/16)(C - D)^2.
/// The imaginary part vanishes identically; the computed |Im| stays
/// below tol (tol in (1e-12, 1e-2)).
KernelResult isotropic_kernel(double z, double tol, const QuadratureOptions& opts = {});

/// z -> infinity saturation constants: Re -> mean angular weight (2/3
/// for both supported shapes), Im -> 0.
AsymptoticLimits asymptotic_limits(AngularShape shape);

/// Dispatch a directional-kernel method (or the isotropic reduction,
/// which ignores `method`).
KernelResult evaluate_kernel(double z, AngularShape shape, KernelMethod method, double tol);

}  // namespace goldilocks
