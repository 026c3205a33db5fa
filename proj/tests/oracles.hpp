#pragma once

// Test-only reference implementations, kept independent of the library
// code paths they are used to check.

#include <cmath>
#include <complex>

namespace oracles {

// Composite Simpson evaluation of the directional angular integral
//   (1/4) Int_{-1}^{1} (1+u^2) (1 - e^{iz(1-u)}) du
// with enough panels to resolve the oscillation. Independent of the
// library's Gauss-Kronrod machinery.
inline std::complex<double> simpson_kernel(double z, int panels_per_unit = 256) {
  const long n = 2L * std::max(64L, static_cast<long>(panels_per_unit) *
                                        static_cast<long>(std::ceil(std::max(1.0, z))));
  const double h = 2.0 / static_cast<double>(n);
  const auto f = [z](double u) -> std::complex<double> {
    const double theta = z * (1.0 - u);
    return 0.25 * (1.0 + u * u) *
           std::complex<double>(1.0 - std::cos(theta), -std::sin(theta));
  };
  std::complex<double> acc = f(-1.0) + f(1.0);
  for (long i = 1; i < n; ++i) {
    const double u = -1.0 + h * static_cast<double>(i);
    acc += f(u) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * (h / 3.0);
}

// Ascending power series for J_0, used to locate its first zero by
// bisection without touching the library Bessel code.
inline double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 60; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

inline double j0_first_zero() {
  double lo = 2.0, hi = 3.0;  // j0 changes sign in [2, 3]
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (j0_series(lo) * j0_series(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles
